"""Diagonal embeddings G_n x G_n -> G_2n and the matching map on domains.

The group map is g1 x g2 -> R^-1 diag[g1, g2] R.  Over B it is exact; the
archimedean version uses the 8-block matrix R_inf.  The map on domains is
z1 x z2 -> A B^-1 S where [A; B] = R_inf^-1 diag[U(z1), FJ conj(U(z2))].
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import GroupError, is_group_element, split_form, standard_form
from .qalg import MatQuat, QuatAlgebra
from .symspace import (
    COND_MAX,
    BoundaryError,
    DomainError,
    DomainPoint,
    _block,
    doubled_realization,
    frak_j,
    zeta_realization,
)
from .qalg import j_prime_numeric


class DoublingError(ValueError):
    pass


def exact_r(alg: QuatAlgebra, m: int, r: int) -> MatQuat:
    """R over B with block sizes (m, r, m, m, r, m)."""
    zi = alg.zeta().inverse()
    h = Fraction(1, 2)
    rows = [
        [1, 0, 0, 0, 0, 0],
        [0, h, 0, 0, -zi, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, -1, 0, 0, 0],
        [0, -h, 0, 0, -zi, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    sizes = [m, r, m, m, r, m]
    return MatQuat.block(alg, rows, sizes, sizes)


def numeric_r(m: int, r: int) -> np.ndarray:
    """R_inf with block sizes (2m, r, r, 2m, 2m, r, r, 2m)."""
    s4 = [2 * m, r, r, 2 * m]
    s8 = s4 + s4
    h = 0.5
    rows = [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, h, 0, 0, 0, 0, -1, 0],
        [0, 0, h, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0, 0, 0],
        [0, -h, 0, 0, 0, 0, -1, 0],
        [0, 0, -h, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
    ]
    return _block(rows, s8, s8)


@dataclass(frozen=True, eq=False)
class DoublingContext:
    alg: QuatAlgebra | None
    m: int
    r: int
    R_exact: MatQuat | None
    R_exact_inv: MatQuat | None
    omega: MatQuat | None
    J: MatQuat | None
    R_numeric: np.ndarray
    R_numeric_inv: np.ndarray
    S: np.ndarray
    FJ: np.ndarray

    @property
    def n(self) -> int:
        return 2 * self.m + self.r

    @property
    def N(self) -> int:
        return 2 * self.n

    @classmethod
    def build(cls, m: int, r: int, alg: QuatAlgebra | None = None) -> "DoublingContext":
        if m < 1:
            raise DoublingError("m must be at least 1")
        if r < 0:
            raise DoublingError("r must be nonnegative")
        R = Rinv = omega = J = None
        if alg is not None:
            R = exact_r(alg, m, r)
            phi = standard_form(alg, m, r).matrix
            n = 2 * m + r
            omega = MatQuat.block(alg, [[phi, 0], [0, -phi]], [n, n], [n, n])
            J = split_form(alg, n).matrix
            if R.star() @ omega @ R != J:
                raise DoublingError("R* omega R != J (construction error)")
            # R*omega R = J gives R^-1 = J^-1 R* omega
            Rinv = J.inverse() @ R.star() @ omega
        Rn = numeric_r(m, r)
        S = np.diag(np.concatenate([np.ones(2 * m), 0.5 * np.ones(2 * r), np.ones(2 * m)])).astype(complex)
        return cls(alg, m, r, R, Rinv, omega, J, Rn, np.linalg.inv(Rn), S, frak_j(m, r))

    # -- exact group embedding ------------------------------------------------

    def identity_check(self) -> bool:
        return self.R_exact.star() @ self.omega @ self.R_exact == self.J

    def rho(self, g1: MatQuat, g2: MatQuat) -> MatQuat:
        n = self.n
        if g1.shape != (n, n) or g2.shape != (n, n):
            raise GroupError("group mismatch")
        D = MatQuat.block(self.alg, [[g1, 0], [0, g2]], [n, n], [n, n])
        return self.R_exact_inv @ D @ self.R_exact

    def rho_checked(self, g1: MatQuat, g2: MatQuat) -> MatQuat:
        phi = standard_form(self.alg, self.m, self.r)
        if not (is_group_element(g1, phi) and is_group_element(g2, phi)):
            raise GroupError("inputs are not group elements")
        return self.rho(g1, g2)

    # -- archimedean ------------------------------------------------------------

    def source(self):
        return zeta_realization(self.m, self.r)

    def target(self):
        return doubled_realization(self.m, self.r)

    def rho_numeric(self, g1: np.ndarray, g2: np.ndarray) -> np.ndarray:
        n = self.n
        D = np.zeros((4 * n, 4 * n), dtype=complex)
        D[:2 * n, :2 * n] = g1
        D[2 * n:, 2 * n:] = g2
        return self.R_numeric_inv @ D @ self.R_numeric

    def rho_pair(self, g1: np.ndarray, g2: np.ndarray) -> np.ndarray:
        """Archimedean doubling matching the conjugated second slot of ``stacked``."""
        FJ = self.FJ
        return self.rho_numeric(g1, FJ @ g2.conj() @ np.linalg.inv(FJ))

    def stacked(self, z1: np.ndarray, z2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """[A; B] = R^-1 diag[U(z1), FJ conj(U(z2))]."""
        n, N = self.n, self.N
        u0 = self.source().u0
        M = np.zeros((2 * N, N), dtype=complex)
        M[:2 * n, :n] = np.vstack([z1, u0])
        M[2 * n:, n:] = self.FJ @ np.vstack([z2, u0]).conj()
        M = self.R_numeric_inv @ M
        return M[:N], M[N:]

    def _check_w0(self, z1, z2):
        if self.r == 0:
            return
        m2 = 2 * self.m
        w1, w2 = z1[m2:, m2:], z2[m2:, m2:]
        if np.linalg.cond(np.eye(self.r) + w1 @ w2.conj()) > COND_MAX:
            raise BoundaryError("1 + w1 conj(w2) is singular")

    def b_matrix(self, p1: DomainPoint, p2: DomainPoint) -> tuple[np.ndarray, complex]:
        self._check_w0(p1.z, p2.z)
        _, B = self.stacked(p1.z, p2.z)
        if np.linalg.cond(B) > COND_MAX:
            raise BoundaryError("B(z1, z2) is singular")
        return B, complex(np.linalg.det(B))

    def iota(self, p1: DomainPoint, p2: DomainPoint) -> DomainPoint:
        for p in (p1, p2):
            if p.realization.tag != "Z" or (p.realization.m, p.realization.r) != (self.m, self.r):
                raise DomainError("points must lie in the working model with matching (m, r)")
        self._check_w0(p1.z, p2.z)
        A, B = self.stacked(p1.z, p2.z)
        if np.linalg.cond(B) > COND_MAX:
            raise BoundaryError("B(z1, z2) is singular")
        return DomainPoint(self.target(), A @ np.linalg.solve(B, self.S))

    def iota_closed_form(self, p1: DomainPoint, p2: DomainPoint) -> np.ndarray:
        """Block formula in terms of z = (u, v, w) and w0 = (1 + w1 conj(w2))^-1."""
        m2, r = 2 * self.m, self.r
        z1, z2 = p1.z, p2.z
        u1, v1, w1 = z1[:m2, :m2], z1[:m2, m2:], z1[m2:, m2:]
        u2, v2, w2 = z2[:m2, :m2], z2[:m2, m2:], z2[m2:, m2:]
        J = j_prime_numeric(self.m)
        if r == 0:
            return np.block([[u1, np.zeros_like(u1)], [np.zeros_like(u1), -u2.conj().T]])
        self._check_w0(z1, z2)
        I = np.eye(r)
        w0 = np.linalg.inv(I + w1 @ w2.conj())
        w0p = I - w1 @ w2.conj()
        w1i = np.linalg.inv(w1)
        w2b, v2b, v2s = w2.conj(), v2.conj(), v2.conj().T
        t1 = w0 @ w1 @ v1.T @ J
        return np.block([
            [u1 - v1 @ w2b @ t1, v1 @ w1i @ w0 @ w1, -v1 @ w2b @ w0, -v1 @ w1i @ w0 @ w1 @ w2b @ v2s],
            [2 * t1, 2 * w0 @ w1, w0p @ w0, -2 * w0 @ w1 @ w2b @ v2s],
            [-2 * w2b @ t1, w1i @ w0p @ w0 @ w1, -2 * w2b @ w0, -2 * w1i @ w0 @ w1 @ w2b @ v2s],
            [-J @ v2b @ t1, -J @ v2b @ w0 @ w1, -J @ v2b @ w0,
             -J @ u2.conj() @ np.linalg.inv(J) + J @ v2b @ w0 @ w1 @ w2b @ v2s],
        ])

    def iota_r1_form(self, p1: DomainPoint, p2: DomainPoint, corrected: bool = False) -> np.ndarray:
        """Simplified block formula for r = 1, where w1 = w2 = i.

        The general formula specializes to +(i/2) v1 in block (1, 3), which
        ``corrected=True`` uses; the default keeps the -(i/2) v1 sign variant
        for comparison.
        """
        if self.r != 1:
            raise DoublingError("r = 1 formula requested for r != 1")
        m2 = 2 * self.m
        z1, z2 = p1.z, p2.z
        u1, v1 = z1[:m2, :m2], z1[:m2, m2:]
        u2, v2 = z2[:m2, :m2], z2[:m2, m2:]
        J = j_prime_numeric(self.m)
        v2s, v2b = v2.conj().T, v2.conj()
        one = np.ones((1, 1))
        return np.block([
            [u1 - 0.5 * v1 @ v1.T @ J, 0.5 * v1, (0.5j if corrected else -0.5j) * v1, 0.5j * v1 @ v2s],
            [1j * v1.T @ J, 1j * one, 0 * one, -v2s],
            [-v1.T @ J, 0 * one, 1j * one, 1j * v2s],
            [-0.5j * J @ v2b @ v1.T @ J, -0.5j * J @ v2b, -0.5 * J @ v2b, -u2.conj().T - 0.5 * J @ v2b @ v2s],
        ])
