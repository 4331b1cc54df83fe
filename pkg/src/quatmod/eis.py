"""Fourier coefficients of the Siegel-type Eisenstein series at s = l.

Only the tube case is handled (r = 0, so n = 2m).  Constants that are known
only up to an algebraic number are left out and the result is flagged with
``modulo_A_n``.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lfun import DirichletCharacter, ConvergenceError, HypothesisError, gamma_m, partial_l
from .qalg import MatQuat, QuatAlgebra, mat_split_embed, quaternionic_residual, real_embed, reduced_det, lambda_pairing

PD = "positive_definite"
PSD = "positive_semidefinite"
INDEF = "indefinite"
POS_TOL = 1e-9
ENUM_CAP = 200_000


class NotHermitianError(ValueError):
    pass


class UnsupportedLocalFactor(ValueError):
    pass


class EnumerationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# positivity


def _require_hermitian(h: MatQuat):
    if h.rows != h.cols or h.star() != h:
        raise NotHermitianError("h is not hermitian")


def _minors_exact(h: MatQuat, idx) -> list:
    """Principal minors of the split image on the index set ``idx`` (rationals)."""
    M = mat_split_embed(h)
    out = []
    for subset in idx:
        sub = M.principal(subset)
        d = sub.det()
        if d.q != 0:
            raise NotHermitianError("minor has a nonzero sqrt(beta) part")
        out.append(d.p)
    return out


def positivity_exact(h: MatQuat) -> str:
    """Classify from principal minors of the exact split image."""
    _require_hermitian(h)
    size = 2 * h.rows
    leading = _minors_exact(h, [tuple(range(k)) for k in range(1, size + 1)])
    if all(d > 0 for d in leading):
        return PD
    subsets = [c for k in range(1, size + 1) for c in itertools.combinations(range(size), k)]
    if all(d >= 0 for d in _minors_exact(h, subsets)):
        return PSD
    return INDEF


def positivity_numeric(h: MatQuat, tol: float = POS_TOL) -> str:
    ev = np.linalg.eigvalsh(real_embed(h))
    if len(ev) == 0:
        return PSD
    scale = max(1.0, float(np.abs(ev).max()))
    if ev.min() > tol * scale:
        return PD
    if ev.min() >= -tol * scale:
        return PSD
    return INDEF


def positivity(h: MatQuat) -> str:
    """Eigenvalue classification, confirmed by exact principal minors."""
    exact = positivity_exact(h)
    num = positivity_numeric(h)
    if exact != num:
        raise ArithmeticError(f"positivity routes disagree: exact={exact}, numeric={num}")
    return exact


def quat_rank(h: MatQuat) -> int:
    """Rank over the division algebra by row reduction."""
    rows = [list(r) for r in h.e]
    rank, col = 0, 0
    nr, nc = h.rows, h.cols
    while rank < nr and col < nc:
        piv = next((i for i in range(rank, nr) if not rows[i][col].is_zero()), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [inv * x for x in rows[rank]]
        for i in range(nr):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# additive characters (phases kept as exact rationals mod 1)


def principal_part(x: Fraction, p: int) -> Fraction:
    """The y in Z[1/p] with 0 <= y < 1 and x - y integral at p."""
    x = Fraction(x)
    den = x.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    if k == 0:
        return Fraction(0)
    pk = p ** k
    a = x.numerator * pow(den, -1, pk) % pk
    return Fraction(a, pk)


def phase_to_complex(theta: Fraction) -> complex:
    theta = Fraction(theta) % 1
    if theta == 0:
        return 1 + 0j
    if theta == Fraction(1, 2):
        return -1 + 0j
    return cmath.exp(2j * math.pi * float(theta))


def additive_phase(x: Fraction, place) -> Fraction:
    x = Fraction(x)
    if place in ("inf", "infinity", None):
        return x % 1
    return (-principal_part(x, int(place))) % 1


def additive_char(x: Fraction, place="inf") -> complex:
    """e_inf(x) = exp(2 pi i x); at a prime p, e_inf(-y) for the p-principal part y."""
    return phase_to_complex(additive_phase(x, place))


def e_inf(z: complex) -> complex:
    return cmath.exp(2j * math.pi * z)


def _primes_of(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def finite_phase(x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum((additive_phase(x, p) for p in _primes_of(x.denominator)), Fraction(0)) % 1


def finite_char(x: Fraction) -> complex:
    return phase_to_complex(finite_phase(x))


def adelic_phase(x: Fraction) -> Fraction:
    return (additive_phase(x, "inf") + finite_phase(x)) % 1


def adelic_char(x: Fraction) -> complex:
    """Product of the local characters at a rational embedded diagonally."""
    return phase_to_complex(adelic_phase(x))


# ---------------------------------------------------------------------------
# coefficients


@dataclass(frozen=True)
class EisensteinParams:
    m: int
    l: int
    chi: DirichletCharacter = field(default_factory=DirichletCharacter.trivial)
    level: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if self.l <= self.n - 1:
            raise HypothesisError("need l > n - 1")

    @property
    def n(self) -> int:
        return 2 * self.m


@dataclass(frozen=True)
class FourierCoefficient:
    value: complex
    modulo_A_n: bool = True
    local_poly_trivial: bool = False

    def flags(self) -> dict:
        return {"modulo_A_n": self.modulo_A_n, "local_poly_trivial": self.local_poly_trivial}


def alpha_ratio(h: MatQuat, s: complex, chi: DirichletCharacter, level: int, m: int,
                assume_local_trivial: bool = True, pmax: int = 100_000) -> FourierCoefficient:
    """Ratio of partial L-values attached to an index of rank rho, local polynomials set to 1."""
    if not assume_local_trivial:
        raise UnsupportedLocalFactor("local polynomials cannot be asserted trivial")
    _require_hermitian(h)
    if h.rows != m:
        raise ValueError("h must be m x m")
    rho = quat_rank(h)
    return alpha_ratio_rank(rho, s, chi, level, m, pmax)


def alpha_ratio_rank(rho: int, s: complex, chi: DirichletCharacter, level: int, m: int,
                     pmax: int = 100_000) -> FourierCoefficient:
    s = complex(s)
    chi2 = chi.square()
    num_args = [2 * s - 4 * m + 2 * rho + 2 * i + 1 for i in range(1, m - rho + 1)]
    den_args = [2 * s - 2 * i for i in range(m)]
    for z in num_args + den_args:
        if z.real <= 1:
            raise ConvergenceError(f"L argument {z} outside Re > 1")
    val = 1 + 0j
    for z in num_args:
        val *= partial_l(z, chi2, level, pmax).value
    for z in den_args:
        val /= partial_l(z, chi2, level, pmax).value
    return FourierCoefficient(val, modulo_A_n=False, local_poly_trivial=True)


def _numeric_quat_hermitian(y, m: int) -> np.ndarray:
    Y = real_embed(y) if isinstance(y, MatQuat) else np.asarray(y, dtype=complex)
    if Y.shape != (2 * m, 2 * m):
        raise ValueError("y has the wrong size")
    scale = max(1.0, float(np.abs(Y).max()))
    if np.abs(Y - Y.conj().T).max() > 1e-9 * scale:
        raise NotHermitianError("y is not hermitian")
    if quaternionic_residual(Y) > 1e-9 * scale:
        raise ValueError("y is not the image of a quaternion matrix")
    if np.linalg.eigvalsh(Y).min() <= POS_TOL * scale:
        raise ValueError("y is not positive definite")
    return Y


def lambda_numeric(h: MatQuat, Y: np.ndarray) -> float:
    """Half the reduced trace of h y, with y given by its complex image."""
    return float(np.trace(real_embed(h) @ Y).real / 2)


def xi_special(y, h: MatQuat, l: int, m: int) -> complex:
    """Confluent function at (2l, 0), closed form for positive h and y."""
    _require_hermitian(h)
    if h.rows != m:
        raise ValueError("h must be m x m")
    if positivity(h) != PD:
        raise ValueError("h must be positive definite")
    Y = _numeric_quat_hermitian(y, m)
    g = gamma_m(m, 2 * l)
    dh = float(reduced_det(h))
    pref = 2.0 ** (2 - 2 * m) * (2j * math.pi) ** (2 * m * l) / g
    return complex(pref * dh ** (l - (2 * m - 1) / 2) * e_inf(1j * lambda_numeric(h, Y)))


def coefficient_special_point(h: MatQuat, q: MatQuat | None, params: EisensteinParams) -> FourierCoefficient:
    """C * e_inf(i lambda(q* h q)), zero unless h is positive definite."""
    _require_hermitian(h)
    m = params.m
    if h.rows != m:
        raise ValueError("h must be m x m")
    if q is None:
        q = MatQuat.identity(h.alg, m)
    if q.shape != (m, m):
        raise ValueError("q must be m x m")
    if positivity(h) != PD:
        return FourierCoefficient(0j, modulo_A_n=True)
    dq = reduced_det(q)
    if dq == 0:
        raise ValueError("q is singular")
    chi_val = params.chi.of_rational(dq)
    C = chi_val.conjugate() * float(abs(dq)) ** (params.l - (2 * m - 1))
    lam = lambda_pairing(q.star() @ h @ q, MatQuat.identity(h.alg, m))
    return FourierCoefficient(complex(C * e_inf(1j * float(lam))), modulo_A_n=True)


# ---------------------------------------------------------------------------
# enumeration and partial sums


def _isqrt_floor(x: Fraction) -> int:
    return math.isqrt(int(math.floor(x))) if x >= 0 else -1


def positive_indices(alg: QuatAlgebra, m: int, bound: int, cap: int = ENUM_CAP):
    """Positive definite h over the standard order with lambda(h) <= bound."""
    if m == 1:
        if bound > cap:
            raise EnumerationError("bound exceeds the enumeration cap")
        for a in range(1, bound + 1):
            yield MatQuat(alg, [[a]])
        return
    if m != 2:
        raise EnumerationError("enumeration only for m <= 2")
    count = 0
    al, be = -alg.alpha, -alg.beta
    for a in range(1, bound):
        for d in range(1, bound - a + 1):
            ad = a * d
            # norm(x) = x0^2 + |al| x1^2 + |be| x2^2 + |al be| x3^2 < ad
            r0 = math.isqrt(ad)
            for x0 in range(-r0, r0 + 1):
                n0 = x0 * x0
                r1 = math.isqrt((ad - n0) // al) if ad > n0 else 0
                for x1 in range(-r1, r1 + 1):
                    n1 = n0 + al * x1 * x1
                    if n1 >= ad:
                        continue
                    r2 = math.isqrt((ad - n1) // be)
                    for x2 in range(-r2, r2 + 1):
                        n2 = n1 + be * x2 * x2
                        if n2 >= ad:
                            continue
                        r3 = math.isqrt((ad - n2) // (al * be))
                        for x3 in range(-r3, r3 + 1):
                            if n2 + al * be * x3 * x3 >= ad:
                                continue
                            count += 1
                            if count > cap:
                                raise EnumerationError("enumeration cap exceeded")
                            x = alg(x0, x1, x2, x3)
                            yield MatQuat(alg, [[a, x], [x.conj(), d]])


@dataclass(frozen=True)
class PartialSum:
    value: complex
    terms: int
    tail: float
    flags: dict

    def to_json(self) -> dict:
        return {"value": [self.value.real, self.value.imag], "terms": self.terms,
                "tail_estimate": self.tail, "flags": dict(self.flags)}


def partial_fourier_sum(sigma: MatQuat, y, params: EisensteinParams, bound: int,
                        cap: int = ENUM_CAP) -> PartialSum:
    """Sum of e_inf(i lambda(h y)) e_h(lambda(h sigma)) over positive h with lambda(h) <= bound."""
    m = params.m
    if m > 2:
        raise EnumerationError("enumeration only for m <= 2")
    _require_hermitian(sigma)
    alg = sigma.alg
    Y = _numeric_quat_hermitian(y, m)
    ymin = float(np.linalg.eigvalsh(Y).min())
    total, count = 0j, 0
    for h in positive_indices(alg, m, bound, cap):
        arch = e_inf(1j * lambda_numeric(h, Y))
        total += arch * finite_char(lambda_pairing(h, sigma))
        count += 1
    # terms beyond the bound have lambda(h) > bound, so lambda(h y) > bound * min eig(y)
    tail = math.exp(-2 * math.pi * (bound + 1) * ymin)
    return PartialSum(total, count, tail, {"modulo_A_n": True, "special_point": True})
