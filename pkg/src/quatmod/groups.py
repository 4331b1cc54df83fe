"""Quaternionic unitary groups G(phi) = {g : g* phi g = phi, det g = 1}.

Exact membership, structured constructors, Klingen parabolics, congruence
tests and the doubling coset representatives live here, together with a
numeric sampler for the real groups defined by a pair of (hermitian, symmetric)
forms on C^{2n}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm, null_space

from .qalg import AlgebraError, MatQuat, Quat, QuatAlgebra, reduced_det


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class SkewHermitianForm:
    alg: QuatAlgebra
    m: int
    r: int
    matrix: MatQuat

    @property
    def n(self) -> int:
        return 2 * self.m + self.r

    def sizes(self) -> tuple[int, int, int]:
        return (self.m, self.r, self.m)


def standard_form(alg: QuatAlgebra, m: int, r: int) -> SkewHermitianForm:
    """[[0,0,-1_m],[0,zeta 1_r,0],[1_m,0,0]]."""
    if m < 0 or r < 0:
        raise GroupError("m and r must be nonnegative")
    mat = MatQuat.block(alg, [[0, 0, -1], [0, alg.zeta(), 0], [1, 0, 0]], [m, r, m], [m, r, m])
    return SkewHermitianForm(alg, m, r, mat)


def split_form(alg: QuatAlgebra, n: int) -> SkewHermitianForm:
    """J_n = [[0,-1_n],[1_n,0]], the form of the doubled group."""
    return standard_form(alg, n, 0)


def is_group_element(g: MatQuat, phi) -> bool:
    mat = phi.matrix if isinstance(phi, SkewHermitianForm) else phi
    if g.shape != mat.shape:
        raise GroupError("size mismatch between element and form")
    if g.star() @ mat @ g != mat:
        return False
    return reduced_det(g) == 1


@dataclass(frozen=True)
class GroupElement:
    form: SkewHermitianForm
    mat: MatQuat

    @classmethod
    def checked(cls, form: SkewHermitianForm, mat: MatQuat) -> "GroupElement":
        if not is_group_element(mat, form):
            raise GroupError("matrix is not in the group")
        return cls(form, mat)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.form, self.mat @ other.mat)

    def inverse(self) -> "GroupElement":
        # g^-1 = phi^-1 g* phi
        phi = self.form.matrix
        return GroupElement(self.form, phi.inverse() @ self.mat.star() @ phi)


def group_inverse(g: MatQuat, phi: MatQuat) -> MatQuat:
    return phi.inverse() @ g.star() @ phi


def siegel_element(q: MatQuat, sigma: MatQuat) -> GroupElement:
    """[[q, sigma q^], [0, q^]] in the split group of size 2m."""
    alg = q.alg
    m = q.rows
    if q.cols != m or sigma.shape != (m, m):
        raise GroupError("q and sigma must be m x m")
    if sigma.star() != sigma:
        raise GroupError("sigma must be hermitian")
    try:
        qhat = q.hat()
    except ZeroDivisionError:
        raise GroupError("q is not invertible") from None
    mat = MatQuat.block(alg, [[q, sigma @ qhat], [0, qhat]], [m, m], [m, m])
    return GroupElement.checked(standard_form(alg, m, 0), mat)


def weyl_element(alg: QuatAlgebra, m: int, r: int) -> MatQuat:
    """[[0,0,-1_m],[0,1_r,0],[1_m,0,0]]; also the matrix kappa_t with m = t."""
    return MatQuat.block(alg, [[0, 0, -1], [0, 1, 0], [1, 0, 0]], [m, r, m], [m, r, m])


def kappa(alg: QuatAlgebra, t: int, r: int) -> MatQuat:
    return weyl_element(alg, t, r)


def upper_unipotent(x: MatQuat, s: MatQuat) -> MatQuat:
    """[[1, x, y], [0, 1, z], [0, 0, 1]] with z = zeta^-1 x*, y = x zeta^-1 x* / 2 + s.

    x is m x r, s is hermitian m x m.  The result lies in G(phi) for any such
    pair; it is integral when x has coordinates divisible by 2 alpha.
    """
    alg = x.alg
    m, r = x.rows, x.cols
    if s.star() != s:
        raise GroupError("s must be hermitian")
    zinv = alg.zeta().inverse()
    z = x.star().scale(zinv, "left")
    y = (x.scale(zinv, "right") @ x.star()).scale(Fraction(1, 2)) + s
    return MatQuat.block(alg, [[1, x, y], [0, 1, z], [0, 0, 1]], [m, r, m], [m, r, m])


def levi_element(q: MatQuat, u: Quat, r: int) -> MatQuat:
    """diag[q, u 1_r, q^] with u in Q(zeta) of norm 1."""
    alg = q.alg
    if u.c != 0 or u.d != 0 or u.norm() != 1:
        raise GroupError("u must lie in Q(zeta) with norm 1")
    m = q.rows
    return MatQuat.block(alg, [[q, 0, 0], [0, u, 0], [0, 0, q.hat()]], [m, r, m], [m, r, m])


# ---------------------------------------------------------------------------
# Klingen parabolics


def _klingen_sizes(m, r, t):
    return [t, m - t, r, t, m - t]


def klingen_member(x: MatQuat, m: int, r: int, t: int) -> bool:
    """True iff a2, g2, h2, h3, h4, l2, d3 vanish (block sizes (t, m-t, r, t, m-t))."""
    if not 0 <= t <= m:
        raise GroupError("t must satisfy 0 <= t <= m")
    if x.shape != (2 * m + r, 2 * m + r):
        raise GroupError("size mismatch")
    B = x.blocks(_klingen_sizes(m, r, t), _klingen_sizes(m, r, t))
    # (row, col) indices of a2, g2, h2, h3, h4, l2, d3
    zero_blocks = [(0, 1), (2, 1), (3, 1), (4, 0), (4, 1), (4, 2), (4, 3)]
    return all(B[i][j].is_zero() for i, j in zero_blocks)


def klingen_project(x: MatQuat, m: int, r: int, t: int) -> MatQuat:
    """Extract the (a1, b1, c1; g1, e, f1; h1, l1, d1) blocks."""
    if not klingen_member(x, m, r, t):
        raise GroupError("not a member of the Klingen parabolic")
    B = x.blocks(_klingen_sizes(m, r, t), _klingen_sizes(m, r, t))
    keep = [0, 2, 3]
    sizes = [t, r, t]
    return MatQuat.block(x.alg, [[B[i][j] for j in keep] for i in keep], sizes, sizes)


def embed_small(xi: MatQuat, m: int, r: int, t: int) -> MatQuat:
    """xi x 1_{2m-2t}: put a (t, r, t) matrix into blocks 1, 3, 4 of G_n."""
    alg = xi.alg
    if xi.shape != (2 * t + r, 2 * t + r):
        raise GroupError("size mismatch")
    B = xi.blocks([t, r, t], [t, r, t])
    z = 0
    grid = [
        [B[0][0], z, B[0][1], B[0][2], z],
        [z, 1, z, z, z],
        [B[1][0], z, B[1][1], B[1][2], z],
        [B[2][0], z, B[2][1], B[2][2], z],
        [z, z, z, z, 1],
    ]
    sizes = _klingen_sizes(m, r, t)
    return MatQuat.block(alg, grid, sizes, sizes)


def vt_condition(beta: MatQuat, gamma: MatQuat, m: int, r: int, t: int, modified: bool = False) -> bool:
    """kappa_t pi_t(beta) = pi_t(gamma) kappa_t, or pi_t(beta) = pi_t(gamma) if modified."""
    pb = klingen_project(beta, m, r, t)
    pg = klingen_project(gamma, m, r, t)
    if modified:
        return pb == pg
    k = kappa(beta.alg, t, r)
    return k @ pb == pg @ k


# ---------------------------------------------------------------------------
# Congruence subgroups


def congruence_member(g: MatQuat, N: int, m: int, r: int) -> bool:
    """g = [[1,*,*],[0,1,*],[0,0,1]] mod N, read on order coordinates."""
    if N < 1:
        raise GroupError("level must be positive")
    if not g.is_integral():
        raise GroupError("non-integral coordinates")
    sizes = [m, r, m]
    starts = [0, m, m + r]
    n = 2 * m + r

    def blk(i):
        return next(b for b in range(3) if starts[b] <= i < starts[b] + sizes[b])

    for i in range(n):
        for j in range(n):
            bi, bj = blk(i), blk(j)
            if bj > bi:
                continue
            target = (1, 0, 0, 0) if (i == j) else (0, 0, 0, 0)
            if any((c - tv) % N != 0 for c, tv in zip(g.e[i][j].coords, target)):
                return False
    return True


def congruent_zero(x: MatQuat, N: int) -> bool:
    return all(c % N == 0 for row in x.e for q in row for c in q.coords)


def check_level(N: int, alg: QuatAlgebra) -> None:
    """Congruence conclusions need N prime to 2 and to zeta."""
    import math

    if N < 1 or math.gcd(N, 2 * abs(alg.alpha)) != 1:
        raise GroupError(f"level {N} must be coprime to 2|alpha| = {2 * abs(alg.alpha)}")


def principal_congruence(g: MatQuat, N: int) -> bool:
    """g = 1 mod N entrywise on order coordinates."""
    if not g.is_integral():
        return False
    return congruent_zero(g - MatQuat.identity(g.alg, g.rows), N)


# ---------------------------------------------------------------------------
# Doubling coset representatives


def coset_rep(alg: QuatAlgebra, t: int, m: int, r: int) -> MatQuat:
    """tau_t = [[1_n, 0], [C, 1_n]] in G_N with C = [[0,0,e_t],[0,0,0],[e_t*,0,0]]."""
    if not 0 <= t <= m:
        raise GroupError("t must satisfy 0 <= t <= m")
    n = 2 * m + r
    e_t = MatQuat.diag(alg, [1] * t + [0] * (m - t)) if m else MatQuat.zeros(alg, 0)
    C = MatQuat.block(alg, [[0, 0, e_t], [0, 0, 0], [e_t.star(), 0, 0]], [m, r, m], [m, r, m])
    return MatQuat.block(alg, [[1, 0], [C, 1]], [n, n], [n, n])


def modified_coset_rep(alg: QuatAlgebra, t: int, m: int, r: int) -> MatQuat:
    """tau_t rho(1, kappa_t x 1_{2m-2t})."""
    from .doubling import DoublingContext

    ctx = DoublingContext.build(m, r, alg)
    n = 2 * m + r
    k = embed_small(kappa(alg, t, r), m, r, t)
    return coset_rep(alg, t, m, r) @ ctx.rho(MatQuat.identity(alg, n), k)


@dataclass(frozen=True)
class TauPattern:
    full: MatQuat
    bottom: list  # 3 x 6 grid of blocks, rows (m, r, m), columns (m, r, m, m, r, m)
    expected: list
    matches: bool
    derived: list
    matches_derived: bool
    mismatched_blocks: tuple


def expected_tau_pattern(xi: MatQuat, m: int, r: int) -> list:
    """Bottom three block rows of tau~_m (xi x 1) tau~_m^-1 as a 3 x 6 block grid."""
    alg = xi.alg
    B = xi.blocks([m, r, m], [m, r, m])
    a, b, c = B[0]
    g, e, f = B[1]
    h, l, d = B[2]
    zeta = alg.zeta()
    zinv = zeta.inverse()
    one_m, one_r = MatQuat.identity(alg, m), MatQuat.identity(alg, r)
    zero = MatQuat.zeros
    return [
        [-h, -l, one_m - d, d, l.scale(zeta, "right").scale(Fraction(1, 2)), zero(alg, m, m)],
        [
            g.scale(-zinv, "left"),
            (e - one_r).scale(-zinv, "left"),
            f.scale(-zinv, "left"),
            f.scale(zinv, "left"),
            (e + one_r).scale(Fraction(1, 2)),
            zero(alg, r, m),
        ],
        [a - one_m, b, c, -c, b.scale(zeta, "right").scale(Fraction(-1, 2)), one_m],
    ]


def derived_tau_pattern(xi: MatQuat, m: int, r: int) -> list:
    """Bottom three block rows of tau~_m (xi x 1) tau~_m^-1 as obtained by exact multiplication.

    Same block support as the expected pattern; the scalars and the side on
    which zeta acts differ.
    """
    alg = xi.alg
    B = xi.blocks([m, r, m], [m, r, m])
    a, b, c = B[0]
    g, e, f = B[1]
    h, l, d = B[2]
    zeta = alg.zeta()
    zinv = zeta.inverse()
    one_m, one_r = MatQuat.identity(alg, m), MatQuat.identity(alg, r)
    zero = MatQuat.zeros
    half = Fraction(1, 2)
    return [
        [h, l.scale(half), one_m - d, d, -l.scale(zinv, "right"), zero(alg, m, m)],
        [
            g.scale(-zeta * half, "left"),
            (e - one_r).scale(-zeta * Fraction(1, 4), "left"),
            f.scale(zeta * half, "left"),
            f.scale(-zeta * half, "left"),
            (one_r + e.scale(zeta, "left").scale(zinv, "right")).scale(half),
            zero(alg, r, m),
        ],
        [a - one_m, b.scale(half), -c, c, -b.scale(zinv, "right"), one_m],
    ]


def conjugate_by_tau_m(xi: MatQuat, m: int, r: int) -> TauPattern:
    """tau~_m rho(xi, 1) tau~_m^-1, compared blockwise with the closed-form bottom rows."""
    from .doubling import DoublingContext

    alg = xi.alg
    n = 2 * m + r
    ctx = DoublingContext.build(m, r, alg)
    tt = modified_coset_rep(alg, m, m, r)
    J = split_form(alg, n).matrix
    full = tt @ ctx.rho(xi, MatQuat.identity(alg, n)) @ group_inverse(tt, J)
    sizes = [m, r, m, m, r, m]
    grid = full.blocks(sizes, sizes)
    bottom = grid[3:]
    expected = expected_tau_pattern(xi, m, r)
    bad = tuple((i, j) for i in range(3) for j in range(6) if bottom[i][j] != expected[i][j])
    derived = derived_tau_pattern(xi, m, r)
    ok_derived = all(bottom[i][j] == derived[i][j] for i in range(3) for j in range(6))
    return TauPattern(full, bottom, expected, not bad, derived, ok_derived, bad)


def tau_pattern_congruences(pattern: TauPattern, xi: MatQuat, N: int, m: int, r: int) -> dict:
    """Congruences d-1, f, c, l, e-1, b = 0 mod N, read on order coordinates."""
    alg = xi.alg
    B = xi.blocks([m, r, m], [m, r, m])
    a, b, c = B[0]
    g, e, f = B[1]
    h, l, d = B[2]
    return {
        "d-1": congruent_zero(d - MatQuat.identity(alg, m), N),
        "f": congruent_zero(f, N),
        "c": congruent_zero(c, N),
        "l": congruent_zero(l, N),
        "e-1": congruent_zero(e - MatQuat.identity(alg, r), N),
        "b": congruent_zero(b, N),
    }


def bottom_left_vanishes(pattern: TauPattern, N: int) -> bool:
    """The first three block columns of the bottom rows are 0 mod N."""
    return all(congruent_zero(blk, N) for row in pattern.bottom for blk in row[:3] if blk.is_integral()) and all(
        blk.is_integral() for row in pattern.bottom for blk in row[:3]
    )


# ---------------------------------------------------------------------------
# Random elements


def _rand_quat(alg, rng: random.Random, lo=-3, hi=3, scale=1) -> Quat:
    return Quat(alg, *(scale * rng.randint(lo, hi) for _ in range(4)))


def random_hermitian(alg, m: int, rng: random.Random, lo=-3, hi=3, scale=1) -> MatQuat:
    s = MatQuat.zeros(alg, m)
    for i in range(m):
        s.e[i][i] = Quat(alg, scale * rng.randint(lo, hi))
        for j in range(i + 1, m):
            q = _rand_quat(alg, rng, lo, hi, scale)
            s.e[i][j] = q
            s.e[j][i] = q.conj()
    return s


def _elementary(alg, m, rng):
    q = MatQuat.identity(alg, m)
    if m >= 2:
        i, j = rng.sample(range(m), 2)
        q.e[i][j] = _rand_quat(alg, rng, -2, 2)
    return q


def random_exact_element(alg: QuatAlgebra, m: int, r: int, rng: random.Random, length: int = 4,
                         level: int = 1, congruence: bool = False) -> MatQuat:
    """Integral word in unipotent, Levi and Weyl generators.

    With congruence=True the word lies in the level-N pattern
    [[1,*,*],[0,1,*],[0,0,1]]: lower unipotents are scaled by N and the Weyl
    and torus generators are left out.
    """
    n = 2 * m + r
    g = MatQuat.identity(alg, n)
    w = weyl_element(alg, m, r)
    winv = w.inverse()
    k = 2 * abs(alg.alpha)
    for _ in range(length):
        choice = rng.randrange(4) if not congruence else rng.randrange(2)
        if choice in (0, 1):
            scale = k if choice == 0 else k * level
            x = MatQuat(alg, [[_rand_quat(alg, rng, -1, 1, scale) for _ in range(r)] for _ in range(m)]) \
                if r else MatQuat.zeros(alg, m, 0)
            s = random_hermitian(alg, m, rng, -2, 2, 1 if choice == 0 else level)
            u = upper_unipotent(x, s)
            if choice == 1:
                u = winv @ u @ w  # lower unipotent
            g = g @ u
        elif choice == 2:
            g = g @ w
        else:
            units = [alg.one(), -alg.one()] + ([alg.zeta(), -alg.zeta()] if alg.alpha == -1 else [])
            q = _elementary(alg, m, rng)
            g = g @ levi_element(q, rng.choice(units), r)
    return g


def random_siegel_word(alg: QuatAlgebra, m: int, rng: random.Random, length: int = 4) -> MatQuat:
    """Word in Siegel elements and the Weyl element for the split form (r = 0)."""
    g = MatQuat.identity(alg, 2 * m)
    J = weyl_element(alg, m, 0)
    for _ in range(length):
        if rng.random() < 0.35:
            g = g @ J
        else:
            g = g @ siegel_element(_elementary(alg, m, rng), random_hermitian(alg, m, rng)).mat
    return g


class LieSampler:
    """Numeric elements of {g : g* H g = H, g^T K g = K} via exponentials.

    The Lie algebra is the real null space of X -> (X* H + H X, X^T K + K X);
    its basis is computed once per sampler.
    """

    def __init__(self, H: np.ndarray, K: np.ndarray):
        self.H = np.asarray(H, dtype=complex)
        self.K = np.asarray(K, dtype=complex)
        self.basis = self._basis()

    def _basis(self) -> list:
        d = self.H.shape[0]
        cols = []
        for idx in range(2 * d * d):
            X = np.zeros(d * d, dtype=complex)
            X[idx % (d * d)] = 1.0 if idx < d * d else 1j
            X = X.reshape(d, d)
            a = X.conj().T @ self.H + self.H @ X
            b = X.T @ self.K + self.K @ X
            v = np.concatenate([a.ravel(), b.ravel()])
            cols.append(np.concatenate([v.real, v.imag]))
        ns = null_space(np.array(cols).T, rcond=1e-10)
        out = []
        for v in ns.T:
            X = (v[: d * d] + 1j * v[d * d:]).reshape(d, d)
            out.append(X)
        return out

    @property
    def dim(self) -> int:
        return len(self.basis)

    def algebra_element(self, rng: np.random.Generator, scale: float = 0.6) -> np.ndarray:
        c = rng.normal(size=len(self.basis)) * scale
        return sum(ci * X for ci, X in zip(c, self.basis))

    def sample(self, rng: np.random.Generator, scale: float = 0.6) -> np.ndarray:
        g = expm(self.algebra_element(rng, scale))
        return g

    def residual(self, g: np.ndarray) -> float:
        return max(
            float(np.abs(g.conj().T @ self.H @ g - self.H).max()),
            float(np.abs(g.T @ self.K @ g - self.K).max()),
        )


def random_numeric_element(H: np.ndarray, K: np.ndarray, seed: int, scale: float = 0.6) -> np.ndarray:
    sampler = LieSampler(H, K)
    return sampler.sample(np.random.default_rng(seed), scale)
