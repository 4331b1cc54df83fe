"""Realizations of the type D symmetric space and the group actions on them.

A realization is a triple (H, K, u0): the domain is the set of z with
U = [z; u0] satisfying U^T K U = 0 and -i U* H U > 0, and g acts by
g z = (a z + b u0)(c z + d u0)^-1 u0 with factor lambda = u0^-1 (c z + d u0).

Three realizations are provided:

* ``Z``: the working model with base point u0 = [[0, 1_r], [1_2m, 0]].
* ``H``: the unbounded model  z^T z + 1 = 0, i(z* - z) > 0.
* ``B``: the bounded model of skew-symmetric z with z z* < 1.

plus the doubled working model used as the target of the diagonal embedding,
whose base point is the block scaling S = diag[1, 1/2, 1/2, 1].
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import LieSampler
from .qalg import j_prime_numeric

TOL_EQ = 1e-9
TOL_POS = 1e-9
COND_MAX = 1e12


class DomainError(ValueError):
    pass


class BoundaryError(DomainError):
    """Point on (or numerically at) the boundary, where delta degenerates."""


def _block(rows, sizes_r, sizes_c) -> np.ndarray:
    """Block matrix where a scalar entry means scalar * identity."""
    out = np.zeros((sum(sizes_r), sum(sizes_c)), dtype=complex)
    r0 = 0
    for i, rs in enumerate(sizes_r):
        c0 = 0
        for j, cs in enumerate(sizes_c):
            blk = rows[i][j]
            if np.isscalar(blk):
                if blk != 0:
                    out[r0:r0 + rs, c0:c0 + cs] = blk * np.eye(rs, cs)
            else:
                out[r0:r0 + rs, c0:c0 + cs] = blk
            c0 += cs
        r0 += rs
    return out


@dataclass(frozen=True, eq=False)
class Realization:
    tag: str
    n: int
    H: np.ndarray
    K: np.ndarray
    u0: np.ndarray
    origin: np.ndarray
    m: int | None = None
    r: int | None = None
    scaling: np.ndarray | None = field(default=None)

    @property
    def size(self) -> int:
        return self.n

    def U(self, z: np.ndarray) -> np.ndarray:
        return np.vstack([z, self.u0])

    def sampler(self) -> LieSampler:
        return LieSampler(self.H, self.K)


def zeta_forms(m: int, r: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(phi_inf, psi_inf, u0) for the working model with parameters (m, r)."""
    Jp = j_prime_numeric(m)
    s = [2 * m, r, r, 2 * m]
    phi = _block([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], s, s)
    psi = _block([[0, 0, 0, Jp], [0, 1, 0, 0], [0, 0, 1, 0], [-Jp, 0, 0, 0]], s, s)
    u0 = _block([[0, 1], [1, 0]], [r, 2 * m], [2 * m, r])
    return phi, psi, u0


def zeta_realization(m: int, r: int) -> Realization:
    if m < 0 or r < 0 or 2 * m + r == 0:
        raise DomainError("need 2m + r > 0")
    phi, psi, u0 = zeta_forms(m, r)
    n = 2 * m + r
    return Realization("Z", n, phi, psi, u0, 1j * np.eye(n), m=m, r=r)


def h_realization(n: int) -> Realization:
    I = np.eye(n)
    H = _block([[0, -1], [1, 0]], [n, n], [n, n])
    K = np.eye(2 * n, dtype=complex)
    return Realization("H", n, H, K, I.astype(complex), 1j * I)


def b_realization(n: int) -> Realization:
    I = np.eye(n)
    H = _block([[-1j, 0], [0, 1j]], [n, n], [n, n])
    K = _block([[0, -1j], [-1j, 0]], [n, n], [n, n])
    return Realization("B", n, H, K, I.astype(complex), np.zeros((n, n), dtype=complex))


def frak_j(m: int, r: int) -> np.ndarray:
    Jp = j_prime_numeric(m)
    s = [2 * m, r, r, 2 * m]
    return _block([[Jp, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, Jp]], s, s)


def doubled_realization(m: int, r: int) -> Realization:
    """Working model of size N = 2n for the doubled group, base point S."""
    n = 2 * m + r
    N = 2 * n
    FJ = frak_j(m, r)
    H = _block([[0, -1], [1, 0]], [N, N], [N, N])
    K = _block([[0, FJ], [-FJ, 0]], [N, N], [N, N])
    S = np.diag(np.concatenate([np.ones(2 * m), 0.5 * np.ones(2 * r), np.ones(2 * m)])).astype(complex)
    return Realization("ZN", N, H, K, S, 1j * np.eye(N), m=m, r=r, scaling=S)


@dataclass(frozen=True, eq=False)
class DomainPoint:
    realization: Realization
    z: np.ndarray

    def __post_init__(self):
        n = self.realization.n
        if self.z.shape != (n, n):
            raise DomainError(f"expected a {n}x{n} matrix")


@dataclass(frozen=True)
class AutomorphyData:
    lam: np.ndarray
    j: complex


@dataclass(frozen=True)
class PairingData:
    eta: np.ndarray
    delta: complex


def point(realization: Realization, z) -> DomainPoint:
    return DomainPoint(realization, np.asarray(z, dtype=complex))


def origin(realization: Realization) -> DomainPoint:
    return DomainPoint(realization, realization.origin.copy())


# ---------------------------------------------------------------------------
# Membership


def canonical_eta(R: Realization, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """-i U(z1)* H U(z2), the pairing that transforms by lambda* . lambda."""
    return -1j * R.U(z1).conj().T @ R.H @ R.U(z2)


def min_eig_hermitian(A: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((A + A.conj().T) / 2).min())


def leading_minors_positive(A: np.ndarray, tol: float = 0.0) -> bool:
    A = (A + A.conj().T) / 2
    return all(np.linalg.det(A[:k, :k]).real > tol for k in range(1, A.shape[0] + 1))


def shape_residuals(p: DomainPoint) -> dict:
    """Explicit equality predicates of each realization."""
    R, z = p.realization, p.z
    if R.tag == "Z":
        m, r = R.m, R.r
        u, v, w = z[:2 * m, :2 * m], z[:2 * m, 2 * m:], z[2 * m:, 2 * m:]
        Jp = j_prime_numeric(m)
        out = {
            "w^T w + 1": float(np.abs(w.T @ w + np.eye(r)).max(initial=0.0)),
            "u J' + v v^T - J' u^T": float(np.abs(u @ Jp + v @ v.T - Jp @ u.T).max(initial=0.0)),
            "lower-left = w v^T J'": float(np.abs(z[2 * m:, :2 * m] - w @ v.T @ Jp).max(initial=0.0)),
        }
    elif R.tag == "H":
        out = {"z^T z + 1": float(np.abs(z.T @ z + np.eye(R.n)).max())}
    elif R.tag == "B":
        out = {"z^T + z": float(np.abs(z.T + z).max())}
    else:
        out = {}
    U = R.U(z)
    out["U^T K U"] = float(np.abs(U.T @ R.K @ U).max())
    return out


def positivity_margin(p: DomainPoint) -> float:
    R, z = p.realization, p.z
    if R.tag == "B":
        return min_eig_hermitian(np.eye(R.n) - z @ z.conj().T)
    return min_eig_hermitian(canonical_eta(R, z, z))


def membership(p: DomainPoint, tol_eq: float = TOL_EQ, tol_pos: float = TOL_POS) -> bool:
    if max(shape_residuals(p).values()) > tol_eq:
        return False
    return positivity_margin(p) > tol_pos


# ---------------------------------------------------------------------------
# Action and automorphy factors


def _split(g: np.ndarray, n: int):
    return g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:]


def group_residual(R: Realization, g: np.ndarray) -> float:
    return max(
        float(np.abs(g.conj().T @ R.H @ g - R.H).max()),
        float(np.abs(g.T @ R.K @ g - R.K).max()),
    )


def act(g: np.ndarray, p: DomainPoint, check: bool = True, tol: float = TOL_EQ) -> tuple[DomainPoint, AutomorphyData]:
    R = p.realization
    n = R.n
    if g.shape != (2 * n, 2 * n):
        raise DomainError("group element has the wrong size")
    if check and group_residual(R, g) > tol * max(1.0, float(np.abs(g).max()) ** 2):
        raise DomainError("matrix is not in the group of this realization")
    a, b, c, d = _split(g, n)
    num = a @ p.z + b @ R.u0
    den = c @ p.z + d @ R.u0
    if np.linalg.cond(den) > COND_MAX:
        raise BoundaryError("c z + d u0 is singular")
    z_new = num @ np.linalg.solve(den, R.u0)
    lam = np.linalg.solve(R.u0, den)
    return DomainPoint(R, z_new), AutomorphyData(lam, complex(np.linalg.det(lam)))


def automorphy(g: np.ndarray, p: DomainPoint) -> AutomorphyData:
    return act(g, p, check=False)[1]


def eta_delta(p1: DomainPoint, p2: DomainPoint) -> PairingData:
    """eta(z1, z2) in the convention attached to each realization.

    Z, H:  i(z1* - z2);  B:  i(z1* z2 - 1);  doubled model: the Z formula
    applied to z S^-1.
    """
    R = p1.realization
    if p2.realization is not R:
        if p2.realization.tag != R.tag or p2.realization.n != R.n:
            raise DomainError("points from different realizations")
    z1, z2 = p1.z, p2.z
    if R.tag in ("Z", "H"):
        eta = 1j * (z1.conj().T - z2)
    elif R.tag == "B":
        eta = 1j * (z1.conj().T @ z2 - np.eye(R.n))
    elif R.tag == "ZN":
        Sinv = np.linalg.inv(R.scaling)
        eta = 1j * ((z1 @ Sinv).conj().T - z2 @ Sinv)
    else:
        raise DomainError(f"unknown realization {R.tag}")
    return PairingData(eta, complex(np.linalg.det(eta)))


def delta(p: DomainPoint) -> complex:
    return eta_delta(p, p).delta


# ---------------------------------------------------------------------------
# Cayley transform and realization maps


def cayley(p: DomainPoint) -> DomainPoint:
    """H-point z -> (z - i)(z + i)^-1 in B."""
    if p.realization.tag != "H":
        raise DomainError("cayley expects a point of the unbounded model")
    n = p.realization.n
    den = p.z + 1j * np.eye(n)
    if np.linalg.cond(den) > COND_MAX:
        raise BoundaryError("z + i is singular")
    return DomainPoint(b_realization(n), (p.z - 1j * np.eye(n)) @ np.linalg.inv(den))


def cayley_inverse(p: DomainPoint) -> DomainPoint:
    """B-point w -> i (1 - w)^-1 (1 + w) in H."""
    if p.realization.tag != "B":
        raise DomainError("inverse cayley expects a point of the bounded model")
    n = p.realization.n
    I = np.eye(n)
    den = I - p.z
    if np.linalg.cond(den) > COND_MAX:
        raise BoundaryError("1 - w is singular")
    return DomainPoint(h_realization(n), 1j * np.linalg.solve(den, I + p.z))


def t_prime(n: int) -> np.ndarray:
    """(1/sqrt 2) [[i, -i], [1, 1]] in blocks of size n."""
    return _block([[1j, -1j], [1, 1]], [n, n], [n, n]) / np.sqrt(2)


def cayley_matrix(n: int) -> np.ndarray:
    """Matrix carrying (H-model) to (B-model): P T'^-1 = (1/sqrt 2) [[1, -i], [1, i]].

    P = [[0, -i], [i, 0]] swaps the sign of the hermitian form so that the
    image of i*1 is 0 and the image of the unbounded model is the unit ball.
    """
    P = _block([[0, -1j], [1j, 0]], [n, n], [n, n])
    return P @ np.linalg.inv(t_prime(n))


def realization_map(R: np.ndarray, p: DomainPoint, target: Realization) -> tuple[DomainPoint, np.ndarray]:
    """R [z; u01] = [z'; u02] mu(z).  Returns (z', mu)."""
    src = p.realization
    n = src.n
    top = R[:n, :n] @ p.z + R[:n, n:] @ src.u0
    bot = R[n:, :n] @ p.z + R[n:, n:] @ src.u0
    if np.linalg.cond(bot) > COND_MAX:
        raise BoundaryError("bottom block of R [z; u0] is singular")
    mu = np.linalg.solve(target.u0, bot)
    z_new = top @ np.linalg.solve(bot, target.u0)
    return DomainPoint(target, z_new), mu


def conjugate_group(R: np.ndarray, g: np.ndarray) -> np.ndarray:
    return R @ g @ np.linalg.inv(R)


# ---------------------------------------------------------------------------
# Compact stabilizer of the origin


def stabilizer_basis(R: Realization, sampler: LieSampler | None = None) -> list:
    """Lie algebra of the stabilizer of the origin, as matrices."""
    sampler = sampler or R.sampler()
    n = R.n
    z0, u0 = R.origin, R.u0
    cols = []
    for X in sampler.basis:
        A, B, C, D = _split(X, n)
        dz = (A @ z0 + B @ u0) - z0 @ np.linalg.solve(u0, C @ z0 + D @ u0)
        cols.append(np.concatenate([dz.real.ravel(), dz.imag.ravel()]))
    from scipy.linalg import null_space

    ns = null_space(np.array(cols).T, rcond=1e-10)
    return [sum(c * X for c, X in zip(v, sampler.basis)) for v in ns.T]


def sample_stabilizer(basis: list, rng: np.random.Generator, scale: float = 0.8) -> np.ndarray:
    from scipy.linalg import expm

    c = rng.normal(size=len(basis)) * scale
    return expm(sum(ci * X for ci, X in zip(c, basis)))


def random_point(R: Realization, sampler: LieSampler, rng: np.random.Generator, scale: float = 0.6) -> tuple[DomainPoint, np.ndarray]:
    g = sampler.sample(rng, scale)
    p, _ = act(g, origin(R), check=False)
    return p, g


# ---------------------------------------------------------------------------
# Invariant measure


def skew_coords(z: np.ndarray) -> np.ndarray:
    n = z.shape[0]
    return np.array([z[h, k] for h in range(n) for k in range(h + 1, n)])


def skew_from_coords(c: np.ndarray, n: int) -> np.ndarray:
    z = np.zeros((n, n), dtype=complex)
    idx = 0
    for h in range(n):
        for k in range(h + 1, n):
            z[h, k] = c[idx]
            z[k, h] = -c[idx]
            idx += 1
    return z


def measure_density(p: DomainPoint) -> float:
    """|delta(z)|^(1-n) for a point of the bounded model."""
    R = p.realization
    if R.tag != "B":
        raise DomainError("density is defined on the bounded model")
    d = abs(delta(p))
    if d < 1e-14:
        raise BoundaryError("delta vanishes")
    return float(d ** (1 - R.n))


def holomorphic_jacobian(g: np.ndarray, p: DomainPoint, h: float = 1e-6) -> np.ndarray:
    """Complex Jacobian of z -> g z on skew coordinates, by central differences."""
    n = p.realization.n
    c0 = skew_coords(p.z)
    k = len(c0)
    Jc = np.zeros((k, k), dtype=complex)
    for idx in range(k):
        e = np.zeros(k, dtype=complex)
        e[idx] = h
        zp = act(g, DomainPoint(p.realization, skew_from_coords(c0 + e, n)), check=False)[0].z
        zm = act(g, DomainPoint(p.realization, skew_from_coords(c0 - e, n)), check=False)[0].z
        Jc[:, idx] = (skew_coords(zp) - skew_coords(zm)) / (2 * h)
    return Jc


def differential_residual(g: np.ndarray, p: DomainPoint, dz: np.ndarray, h: float = 1e-6) -> float:
    """Compare the directional derivative of z -> g z with lambda^-T dz lambda^-1."""
    R = p.realization
    zp = act(g, DomainPoint(R, p.z + h * dz), check=False)[0].z
    zm = act(g, DomainPoint(R, p.z - h * dz), check=False)[0].z
    fd = (zp - zm) / (2 * h)
    lam = automorphy(g, p).lam
    li = np.linalg.inv(lam)
    pred = li.T @ dz @ li
    return float(np.abs(fd - pred).max() / max(1.0, np.abs(pred).max()))


def density_invariance_residual(g: np.ndarray, p: DomainPoint) -> float:
    """|density(g z) |det Jc|^2 / density(z) - 1|."""
    gz = act(g, p, check=False)[0]
    Jc = holomorphic_jacobian(g, p)
    jac = abs(np.linalg.det(Jc)) ** 2 if Jc.size else 1.0
    return abs(measure_density(gz) * jac / measure_density(p) - 1.0)
