"""Dirichlet characters, truncated Euler products and the Gamma bookkeeping.

Everything numeric lives in the region of absolute convergence; there is no
analytic continuation here.  Euler products are truncated at ``pmax`` and
report a heuristic tail estimate alongside the value.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np
from scipy import special

from . import kernels

EULER_VARIANTS = ("s_free", "s_dependent")
ROOT_TOL = 1e-12


class ConvergenceError(ValueError):
    """Argument outside the region where the truncated product is meaningful."""


class PoleError(ValueError):
    pass


class SatakeError(ValueError):
    pass


class HypothesisError(ValueError):
    pass


# ---------------------------------------------------------------------------
# primes


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple:
    if n < 2:
        return ()
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


def prime_factors(n: int) -> list:
    n = abs(int(n))
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


# ---------------------------------------------------------------------------
# characters


class DirichletCharacter:
    """A character mod ``modulus`` stored as its full value table."""

    __slots__ = ("modulus", "values", "_conductor")

    def __init__(self, modulus: int, values: Iterable[complex]):
        modulus = int(modulus)
        if modulus < 1:
            raise ValueError("modulus must be positive")
        vals = tuple(complex(v) for v in values)
        if len(vals) != modulus:
            raise ValueError(f"need {modulus} values, got {len(vals)}")
        for x, v in enumerate(vals):
            unit = math.gcd(x, modulus) == 1
            if unit and abs(abs(v) - 1) > ROOT_TOL:
                raise ValueError(f"chi({x}) is not a root of unity")
            if not unit and v != 0:
                raise ValueError(f"chi({x}) must vanish off the units")
        units = [x for x in range(modulus) if math.gcd(x, modulus) == 1]
        for x in units:
            for y in units:
                if abs(vals[x * y % modulus] - vals[x] * vals[y]) > 1e-9:
                    raise ValueError("table is not multiplicative")
        for x in units:
            # a finite-order character has values of finite order dividing phi(N)
            if abs(vals[x] ** len(units) - 1) > 1e-9:
                raise ValueError(f"chi({x}) has order not dividing phi(N)")
        self.modulus = modulus
        self.values = vals
        self._conductor = None

    @classmethod
    def trivial(cls, modulus: int = 1) -> "DirichletCharacter":
        return cls(modulus, [1 if math.gcd(x, modulus) == 1 else 0 for x in range(modulus)])

    @classmethod
    def from_units(cls, modulus: int, table: Mapping[int, complex]) -> "DirichletCharacter":
        """Build from a map on unit residues; non-units get 0."""
        vals = []
        for x in range(modulus):
            if math.gcd(x, modulus) == 1:
                if x not in table:
                    raise ValueError(f"missing value at unit {x}")
                vals.append(table[x])
            else:
                vals.append(0)
        return cls(modulus, vals)

    def __call__(self, x: int) -> complex:
        return self.values[int(x) % self.modulus]

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter) and self.modulus == other.modulus
                and np.allclose(self.values, other.values, atol=1e-12))

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"DirichletCharacter(modulus={self.modulus})"

    def square(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, [v * v for v in self.values])

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, [v.conjugate() for v in self.values])

    def is_trivial(self) -> bool:
        return all(abs(v - 1) < 1e-12 for x, v in enumerate(self.values) if math.gcd(x, self.modulus) == 1)

    @property
    def conductor(self) -> int:
        if self._conductor is None:
            N = self.modulus
            for d in sorted(d for d in range(1, N + 1) if N % d == 0):
                if all(abs(self.values[x] - 1) < 1e-9 for x in range(N)
                       if math.gcd(x, N) == 1 and x % d == 1 % d):
                    self._conductor = d
                    break
        return self._conductor

    def of_rational(self, x: Fraction) -> complex:
        """chi(num) * conj(chi(den)) for a rational with unit numerator and denominator."""
        x = Fraction(x)
        num, den = abs(x.numerator), x.denominator
        a, b = self(num), self(den)
        if a == 0 or b == 0:
            raise ValueError("rational is not a unit at the modulus")
        return a * b.conjugate()

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "values": [[v.real, v.imag] for v in self.values]}


def char_eval(chi: DirichletCharacter, x: int) -> complex:
    return chi(x)


def parse_char_table(modulus: int, table) -> DirichletCharacter:
    """Accept a list of numbers or [re, im] pairs, one per residue or one per unit."""
    vals = [complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in table]
    if len(vals) == modulus:
        return DirichletCharacter(modulus, vals)
    units = [x for x in range(modulus) if math.gcd(x, modulus) == 1]
    if len(vals) == len(units):
        return DirichletCharacter.from_units(modulus, dict(zip(units, vals)))
    raise ValueError("character table length matches neither the modulus nor the unit count")


# ---------------------------------------------------------------------------
# Dirichlet L


@dataclass(frozen=True)
class LValueReport:
    s: complex
    value: complex
    pmax: int
    tail: float
    flags: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "s": [self.s.real, self.s.imag],
            "value": [self.value.real, self.value.imag],
            "pmax": self.pmax,
            "tail_estimate": self.tail,
            "flags": dict(self.flags),
        }


def _zeta_tail(sigma: float, pmax: int) -> float:
    """Integral bound for sum_{n > pmax} n^-sigma."""
    if pmax < 1:
        return math.inf
    return pmax ** (1 - sigma) / (sigma - 1)


def dirichlet_l_partial(s: complex, chi: DirichletCharacter, excluded: Iterable[int] = (),
                        pmax: int = 100_000) -> LValueReport:
    """Euler product of L(s, chi) over primes up to pmax, skipping ``excluded``."""
    s = complex(s)
    if s.real <= 1:
        raise ConvergenceError("Re(s) must exceed 1")
    excl = set(int(p) for p in excluded)
    ps = [p for p in primes_up_to(pmax) if p not in excl]
    primes = np.array(ps, dtype=float)
    cvals = np.array([chi(p) for p in ps], dtype=complex)
    val = kernels.dirichlet_euler(primes, cvals, s)
    return LValueReport(s, complex(val), pmax, _zeta_tail(s.real, pmax))


def partial_l(s: complex, chi: DirichletCharacter, level: int, pmax: int = 100_000) -> LValueReport:
    """L with the Euler factors at primes dividing ``level`` removed."""
    return dirichlet_l_partial(s, chi, prime_factors(level), pmax)


def lambda_norm(s: complex, chi: DirichletCharacter, n: int, level: int = 1,
                pmax: int = 100_000) -> complex:
    """prod_{i=0}^{n-1} L_level(2s - 2i, chi^2)."""
    s = complex(s)
    if n < 1:
        raise ValueError("n must be positive")
    if (2 * s - 2 * (n - 1)).real <= 1:
        raise ConvergenceError("Re(2s - 2(n-1)) must exceed 1")
    chi2 = chi.square()
    val = 1 + 0j
    for i in range(n):
        val *= partial_l(2 * s - 2 * i, chi2, level, pmax).value
    return val


# ---------------------------------------------------------------------------
# standard L from Satake data


@dataclass(frozen=True)
class SatakeData:
    n: int
    k: int
    level: int
    params: Mapping[int, tuple]

    def __post_init__(self):
        for p, al in self.params.items():
            if len(al) != self.n:
                raise SatakeError(f"prime {p}: expected {self.n} parameters, got {len(al)}")
            if any(a == 0 for a in al):
                raise SatakeError(f"prime {p}: zero Satake parameter")

    @classmethod
    def from_pairs(cls, n: int, k: int, level: int, raw: Mapping) -> "SatakeData":
        """Accept n values per prime, or 2n values given as (a, 1/a) pairs."""
        params = {}
        for key, vals in raw.items():
            p = int(key)
            al = [complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in vals]
            if len(al) == 2 * n:
                pairs = list(zip(al[0::2], al[1::2]))
                for a, b in pairs:
                    if abs(a * b - 1) > 1e-9:
                        raise SatakeError(f"prime {p}: pair ({a}, {b}) is not inverse")
                al = [a for a, _ in pairs]
            params[p] = tuple(al)
        return cls(n, k, level, params)

    @classmethod
    def load(cls, path: str) -> "SatakeData":
        with open(path) as fh:
            doc = json.load(fh)
        raw = doc.get("satake")
        if raw is None:
            raw = {key: v for key, v in doc.items() if key.isdigit()}
        return cls.from_pairs(int(doc["n"]), int(doc.get("k", 0)), int(doc.get("level", 1)), raw)

    @classmethod
    def constant(cls, n: int, k: int, level: int, pmax: int, value: complex = 1) -> "SatakeData":
        ps = [p for p in primes_up_to(pmax) if level % p]
        return cls(n, k, level, {p: (complex(value),) * n for p in ps})

    def growth(self) -> float:
        """max |log|a|| / log p over the supplied parameters."""
        g = 0.0
        for p, al in self.params.items():
            for a in al:
                g = max(g, abs(math.log(abs(a))) / math.log(p))
        return g


def _check_variant(variant: str):
    if variant not in EULER_VARIANTS:
        raise ValueError(f"unknown Euler factor variant {variant!r}")


def euler_factor(p: int, satake: SatakeData, chi: DirichletCharacter, s: complex,
                 variant: str = "s_free") -> complex:
    """Local factor at a good prime p, evaluated factor by factor."""
    _check_variant(variant)
    if satake.level % p == 0:
        raise ValueError("p divides the level")
    if p not in satake.params:
        raise SatakeError(f"no Satake data at p={p}")
    s = complex(s)
    n = satake.n
    c = chi(p)
    first = p ** (2 * n - 2) * c * c
    if variant == "s_dependent":
        first = first * p ** (-2 * s)
    dens = [1 - first]
    x = c * p ** (n - 1 - s)
    for a in satake.params[p]:
        dens.append(1 - a * x)
        dens.append(1 - x / a)
    val = 1 + 0j
    for d in dens:
        if abs(d) < 1e-12:
            raise PoleError(f"Euler factor at p={p} has a pole")
        val /= d
    return val


def l_function(s: complex, satake: SatakeData, chi: DirichletCharacter, pmax: int,
               variant: str = "s_free") -> LValueReport:
    """Truncated product of Euler factors over good primes up to pmax.

    ``flags["dseries"]`` carries D = L / Lambda at the same truncation.
    """
    _check_variant(variant)
    s = complex(s)
    n = satake.n
    g = satake.growth()
    if s.real <= 2 * n - 1 + g:
        raise ConvergenceError(f"need Re(s) > 2n-1+growth = {2 * n - 1 + g:.6g}")
    ps = [p for p in primes_up_to(pmax) if satake.level % p]
    missing = [p for p in ps if p not in satake.params]
    if missing:
        raise SatakeError(f"missing Satake data at primes {missing[:5]}")
    if not ps:
        val = 1 + 0j
    else:
        primes = np.array(ps, dtype=float)
        cvals = np.array([chi(p) for p in ps], dtype=complex)
        alphas = np.array([satake.params[p] for p in ps], dtype=complex).reshape(len(ps), n)
        val = kernels.satake_euler(primes, cvals, alphas, s, n, EULER_VARIANTS.index(variant))
    sig = s.real - (n - 1) - g
    tail = 2 * n * (pmax ** (1 - sig) / (sig - 1) if pmax >= 1 else math.inf)
    flags = {"euler_factor_variant": variant}
    lam = lambda_norm(s, chi, n, satake.level, pmax) if (2 * s - 2 * (n - 1)).real > 1 else None
    if lam is not None:
        d = complex(val) / lam
        flags["lambda"] = [lam.real, lam.imag]
        flags["dseries"] = [d.real, d.imag]
    return LValueReport(s, complex(val), pmax, tail, flags)


def d_series(s: complex, satake: SatakeData, chi: DirichletCharacter, pmax: int,
             variant: str = "s_free") -> tuple[complex, complex, complex]:
    """Return (D, Lambda, L) with L = Lambda * D."""
    rep = l_function(s, satake, chi, pmax, variant)
    lam = lambda_norm(s, chi, satake.n, satake.level, pmax)
    return rep.value / lam, lam, rep.value


# ---------------------------------------------------------------------------
# Gamma machinery


def _is_pole(z: complex) -> bool:
    return abs(z.imag) < 1e-14 and z.real <= 0 and abs(z.real - round(z.real)) < 1e-14


def gamma_m(m: int, s: complex) -> complex:
    """pi^{m(m-1)} prod_{i<m} Gamma(s - 2i)."""
    if m < 1:
        raise ValueError("m must be positive")
    s = complex(s)
    val = complex(math.pi ** (m * (m - 1)))
    for i in range(m):
        z = s - 2 * i
        if _is_pole(z):
            raise PoleError(f"Gamma pole at {z.real:g}")
        val *= complex(special.gamma(z))
    return val


def reproducing_args(n: int, k: int, s: complex) -> tuple[list, list]:
    num = [s + k - 2 * n + 3 + 2 * j for j in range(n - 1)]
    den = [s + k - n + 2 + j for j in range(n - 1)]
    return num, den


def reproducing_constant(n: int, k: int, s: complex) -> complex:
    """pi^{n(n-1)/2} times the Gamma ratio, with the algebraic factor set to 1."""
    if n < 2:
        raise HypothesisError("only defined for n >= 2")
    s = complex(s)
    if k + s.real <= 2 * n + 1:
        raise ConvergenceError("need k + Re(s) > 2n + 1")
    num, den = reproducing_args(n, k, s)
    for z in num + den:
        if _is_pole(z):
            raise PoleError(f"Gamma pole at {z.real:g}")
    logv = sum(special.loggamma(z) for z in num) - sum(special.loggamma(z) for z in den)
    return complex(math.pi ** (n * (n - 1) / 2) * cmath.exp(logv))


# ---------------------------------------------------------------------------
# exponents


def algebraicity_exponent(n: int, k: int, mu: int) -> Fraction:
    """n(k + mu) - (3/2) n (n - 1)."""
    if not (k > 2 * n - 1 and 2 * n - 1 < mu <= k):
        raise HypothesisError("need k > 2n-1 and 2n-1 < mu <= k")
    return Fraction(n * (k + mu)) - Fraction(3 * n * (n - 1), 2)


def nearly_holo_exponent(m: int, l: int, mu: int) -> tuple[int, int]:
    """(m(l - mu), m(l + mu) - m(m - 1)) for the group of size n = 2m."""
    n = 2 * m
    if not (l > n - 1 and n - 1 < mu <= l):
        raise HypothesisError("need l > n-1 and n-1 < mu <= l")
    return m * (l - mu), m * (l + mu) - m * (m - 1)


# ---------------------------------------------------------------------------
# Pfaffian


def pfaffian(A) -> complex:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if A.shape[0] % 2:
        raise ValueError("odd dimension")
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if np.abs(A + A.T).max(initial=0.0) > 1e-12 * scale:
        raise ValueError("matrix is not skew-symmetric")
    if A.shape[0] == 0:
        return 1 + 0j
    return complex(kernels.pfaffian(np.ascontiguousarray(A)))
