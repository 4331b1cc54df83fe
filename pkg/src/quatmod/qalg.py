"""Exact arithmetic in a definite quaternion algebra (alpha, beta / Q).

Elements are stored by rational coordinates in the basis 1, z, x, zx with
z^2 = alpha, x^2 = beta and zx = -xz.  Matrices over the algebra are lists of
rows.  The splitting field K = Q(sqrt(beta)) is modelled by rational pairs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class AlgebraError(ValueError):
    pass


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        raise AlgebraError("floats are not accepted in the exact layer")
    return Fraction(v)


def _squarefree(k: int) -> bool:
    k = abs(k)
    if k == 0:
        return False
    d = 2
    while d * d <= k:
        if k % (d * d) == 0:
            return False
        d += 1
    return True


class QuatAlgebra:
    """The algebra (alpha, beta / Q) with alpha, beta negative and squarefree."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha: int, beta: int):
        alpha, beta = int(alpha), int(beta)
        if alpha >= 0 or beta >= 0:
            raise AlgebraError("alpha and beta must be negative (definite algebra)")
        if not (_squarefree(alpha) and _squarefree(beta)):
            raise AlgebraError("alpha and beta must be squarefree")
        self.alpha = alpha
        self.beta = beta

    def __eq__(self, other):
        return isinstance(other, QuatAlgebra) and (self.alpha, self.beta) == (other.alpha, other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"QuatAlgebra({self.alpha}, {self.beta})"

    def __call__(self, a=0, b=0, c=0, d=0) -> "Quat":
        return Quat(self, a, b, c, d)

    def one(self) -> "Quat":
        return Quat(self, 1)

    def zero(self) -> "Quat":
        return Quat(self)

    def zeta(self) -> "Quat":
        return Quat(self, 0, 1)

    def xi(self) -> "Quat":
        return Quat(self, 0, 0, 1)

    def zeta_xi(self) -> "Quat":
        return Quat(self, 0, 0, 0, 1)


class Quat:
    """An element a + b*zeta + c*xi + d*zeta*xi."""

    __slots__ = ("alg", "a", "b", "c", "d")

    def __init__(self, alg: QuatAlgebra, a=0, b=0, c=0, d=0):
        self.alg = alg
        self.a = _frac(a)
        self.b = _frac(b)
        self.c = _frac(c)
        self.d = _frac(d)

    @classmethod
    def _raw(cls, alg, a, b, c, d):
        q = object.__new__(cls)
        q.alg = alg
        q.a, q.b, q.c, q.d = a, b, c, d
        return q

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def _check(self, other: "Quat"):
        if other.alg != self.alg:
            raise AlgebraError("quaternions from different algebras")

    def _coerce(self, other):
        if isinstance(other, Quat):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Quat._raw(self.alg, Fraction(other), Fraction(0), Fraction(0), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quat._raw(self.alg, self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quat._raw(self.alg, self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Quat._raw(self.alg, -self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Quat._raw(self.alg, self.a * f, self.b * f, self.c * f, self.d * f)
        if not isinstance(other, Quat):
            return NotImplemented
        self._check(other)
        al, be = self.alg.alpha, self.alg.beta
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quat._raw(
            self.alg,
            a1 * a2 + al * b1 * b2 + be * c1 * c2 - al * be * d1 * d2,
            a1 * b2 + b1 * a2 - be * c1 * d2 + be * d1 * c2,
            a1 * c2 + c1 * a2 + al * b1 * d2 - al * d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, Quat):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0 and self.c == 0 and self.d == 0
        if not isinstance(other, Quat):
            return NotImplemented
        return self.alg == other.alg and self.coords == other.coords

    def __hash__(self):
        return hash((self.alg, self.coords))

    def __repr__(self):
        return "Quat(" + ", ".join(str(v) for v in self.coords) + ")"

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def conj(self) -> "Quat":
        """Main involution."""
        return Quat._raw(self.alg, self.a, -self.b, -self.c, -self.d)

    def trace(self) -> Fraction:
        return 2 * self.a

    def norm(self) -> Fraction:
        al, be = self.alg.alpha, self.alg.beta
        return self.a * self.a - al * self.b * self.b - be * self.c * self.c + al * be * self.d * self.d

    def inverse(self) -> "Quat":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("zero quaternion is not invertible")
        return self.conj() * (1 / nrm)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coords)


def quat_mul(x: Quat, y: Quat) -> Quat:
    return x * y


def conjugate(x: Quat) -> Quat:
    return x.conj()


def trace_norm(x: Quat) -> tuple[Fraction, Fraction]:
    return x.trace(), x.norm()


# ---------------------------------------------------------------------------
# The quadratic field K = Q(sqrt(beta))


class QuadElem:
    """p + q*sqrt(beta) with rational p, q."""

    __slots__ = ("p", "q", "beta")

    def __init__(self, p=0, q=0, beta: int = -1):
        self.p = _frac(p)
        self.q = _frac(q)
        self.beta = beta

    @classmethod
    def _raw(cls, p, q, beta):
        e = object.__new__(cls)
        e.p, e.q, e.beta = p, q, beta
        return e

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.beta != self.beta:
                raise AlgebraError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem._raw(Fraction(other), Fraction(0), self.beta)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem._raw(self.p + o.p, self.q + o.q, self.beta)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem._raw(self.p - o.p, self.q - o.q, self.beta)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return QuadElem._raw(-self.p, -self.q, self.beta)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem._raw(self.p * o.p + self.beta * self.q * o.q, self.p * o.q + self.q * o.p, self.beta)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.beta * self.q * self.q

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero is not invertible in K")
        return QuadElem._raw(self.p / n, -self.q / n, self.beta)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def conj(self) -> "QuadElem":
        return QuadElem._raw(self.p, -self.q, self.beta)

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if not isinstance(other, QuadElem):
            return NotImplemented
        return (self.p, self.q, self.beta) == (other.p, other.q, other.beta)

    def __hash__(self):
        return hash((self.p, self.q, self.beta))

    def __repr__(self):
        return f"QuadElem({self.p}, {self.q})"

    def to_complex(self) -> complex:
        return complex(float(self.p), float(self.q) * float(np.sqrt(-self.beta)))


# ---------------------------------------------------------------------------
# Matrices over B


class MatQuat:
    """Dense matrix with Quat entries, stored row-major."""

    __slots__ = ("alg", "rows", "cols", "e")

    def __init__(self, alg: QuatAlgebra, entries: Sequence[Sequence]):
        rows = [list(r) for r in entries]
        self.alg = alg
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise AlgebraError("ragged matrix")
        self.e = [[_as_quat(alg, v) for v in r] for r in rows]

    @classmethod
    def _raw(cls, alg, e, rows=None, cols=None):
        m = object.__new__(cls)
        m.alg = alg
        m.e = e
        m.rows = len(e) if rows is None else rows
        m.cols = (len(e[0]) if e else 0) if cols is None else cols
        return m

    @classmethod
    def zeros(cls, alg, rows, cols=None):
        cols = rows if cols is None else cols
        z = alg.zero()
        return cls._raw(alg, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, alg, n, scalar=None):
        one = alg.one() if scalar is None else _as_quat(alg, scalar)
        m = cls.zeros(alg, n)
        for i in range(n):
            m.e[i][i] = one
        return m

    @classmethod
    def diag(cls, alg, values):
        vals = [_as_quat(alg, v) for v in values]
        m = cls.zeros(alg, len(vals))
        for i, v in enumerate(vals):
            m.e[i][i] = v
        return m

    @classmethod
    def block(cls, alg, blocks, row_sizes, col_sizes):
        """Assemble from a grid of blocks.

        A block may be a MatQuat, 0, or a scalar (int, Fraction, Quat) meaning
        scalar times the identity of the block's size.
        """
        n_r, n_c = sum(row_sizes), sum(col_sizes)
        out = cls.zeros(alg, n_r, n_c)
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                blk = blocks[bi][bj]
                if isinstance(blk, MatQuat):
                    if (blk.rows, blk.cols) != (rs, cs):
                        raise AlgebraError("block size mismatch")
                    for i in range(rs):
                        out.e[r0 + i][c0:c0 + cs] = list(blk.e[i])
                else:
                    q = _as_quat(alg, blk)
                    if not q.is_zero():
                        if rs != cs:
                            raise AlgebraError("scalar block must be square")
                        for i in range(rs):
                            out.e[r0 + i][c0 + i] = q
                c0 += cs
            r0 += rs
        return out

    def sub(self, r0, r1, c0, c1) -> "MatQuat":
        return MatQuat._raw(self.alg, [row[c0:c1] for row in self.e[r0:r1]], r1 - r0, c1 - c0)

    def blocks(self, row_sizes, col_sizes):
        out, r0 = [], 0
        for rs in row_sizes:
            row, c0 = [], 0
            for cs in col_sizes:
                row.append(self.sub(r0, r0 + rs, c0, c0 + cs))
                c0 += cs
            out.append(row)
            r0 += rs
        return out

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.e[i][j]

    def __eq__(self, other):
        if not isinstance(other, MatQuat):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.e, other.e) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.e))

    def __repr__(self):
        return "MatQuat(" + repr([[x.coords for x in r] for r in self.e]) + ")"

    def __add__(self, other: "MatQuat"):
        if self.shape != other.shape:
            raise AlgebraError("shape mismatch")
        return MatQuat._raw(self.alg, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.e, other.e)], *self.shape)

    def __sub__(self, other: "MatQuat"):
        if self.shape != other.shape:
            raise AlgebraError("shape mismatch")
        return MatQuat._raw(self.alg, [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.e, other.e)], *self.shape)

    def __neg__(self):
        return MatQuat._raw(self.alg, [[-a for a in r] for r in self.e], *self.shape)

    def scale(self, s, side="left") -> "MatQuat":
        q = _as_quat(self.alg, s)
        if side == "left":
            return MatQuat._raw(self.alg, [[q * a for a in r] for r in self.e], *self.shape)
        return MatQuat._raw(self.alg, [[a * q for a in r] for r in self.e], *self.shape)

    def __matmul__(self, other: "MatQuat") -> "MatQuat":
        if self.cols != other.rows:
            raise AlgebraError("shape mismatch in product")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return MatQuat.zeros(self.alg, self.rows, other.cols)
        return MatQuat._raw(self.alg, _matmul(self.e, other.e, other.cols), self.rows, other.cols)

    def transpose(self) -> "MatQuat":
        return MatQuat._raw(self.alg, [list(c) for c in zip(*self.e)] if self.rows else [[] for _ in range(self.cols)], self.cols, self.rows)

    def conj(self) -> "MatQuat":
        return MatQuat._raw(self.alg, [[a.conj() for a in r] for r in self.e], *self.shape)

    def star(self) -> "MatQuat":
        """Conjugate transpose."""
        return MatQuat._raw(self.alg, [[a.conj() for a in c] for c in zip(*self.e)] if self.rows else [[] for _ in range(self.cols)], self.cols, self.rows)

    def hat(self) -> "MatQuat":
        """(X*)^-1."""
        return self.star().inverse()

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.e for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            (a == 1) if i == j else a.is_zero() for i, r in enumerate(self.e) for j, a in enumerate(r)
        )

    def is_integral(self) -> bool:
        return all(a.is_integral() for r in self.e for a in r)

    def inverse(self) -> "MatQuat":
        """Gauss-Jordan elimination over the division ring."""
        if self.rows != self.cols:
            raise AlgebraError("non-square matrix")
        n = self.rows
        alg = self.alg
        a = [list(r) for r in self.e]
        inv = MatQuat.identity(alg, n).e
        inv = [list(r) for r in inv]
        for col in range(n):
            piv = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("singular quaternion matrix")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col].inverse()
            a[col] = [p * x for x in a[col]]
            inv[col] = [p * x for x in inv[col]]
            for i in range(n):
                if i == col:
                    continue
                f = a[i][col]
                if f.is_zero():
                    continue
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
        return MatQuat._raw(alg, inv, n, n)

    def to_lists(self):
        return [[x.coords for x in r] for r in self.e]


def _as_quat(alg: QuatAlgebra, v) -> Quat:
    if isinstance(v, Quat):
        if v.alg != alg:
            raise AlgebraError("quaternion from a different algebra")
        return v
    if isinstance(v, (tuple, list)) and len(v) == 4:
        return Quat(alg, *v)
    return Quat(alg, v)


def _matmul_py(a, b, ncols):
    out = []
    inner = range(len(b))
    for row in a:
        new = []
        for j in range(ncols):
            acc = None
            for k in inner:
                x = row[k]
                if x.is_zero():
                    continue
                y = b[k][j]
                if y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            new.append(acc if acc is not None else Quat._raw(row[0].alg, Fraction(0), Fraction(0), Fraction(0), Fraction(0)))
        out.append(new)
    return out


_matmul = _matmul_py


def mat_from_coords(alg: QuatAlgebra, rows: Iterable[Iterable]) -> MatQuat:
    """Build from nested 4-tuples of rationals or 'num/den' strings."""
    return MatQuat(alg, [[Quat(alg, *c) for c in r] for r in rows])


# ---------------------------------------------------------------------------
# Splitting embedding into 2x2 matrices over K


class MatQuad:
    """Square or rectangular matrix over K = Q(sqrt(beta))."""

    __slots__ = ("beta", "e", "rows", "cols")

    def __init__(self, beta: int, entries):
        self.beta = beta
        self.e = [[v if isinstance(v, QuadElem) else QuadElem(v, 0, beta) for v in r] for r in entries]
        self.rows = len(self.e)
        self.cols = len(self.e[0]) if self.e else 0

    @classmethod
    def identity(cls, beta, n):
        return cls(beta, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, MatQuad):
            return NotImplemented
        return self.shape == other.shape and all(a == b for ra, rb in zip(self.e, other.e) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.e))

    def __matmul__(self, other: "MatQuad") -> "MatQuad":
        if self.cols != other.rows:
            raise AlgebraError("shape mismatch in product")
        zero = QuadElem._raw(Fraction(0), Fraction(0), self.beta)
        out = []
        for row in self.e:
            new = []
            for j in range(other.cols):
                acc = zero
                for k, x in enumerate(row):
                    if x.is_zero():
                        continue
                    y = other.e[k][j]
                    if not y.is_zero():
                        acc = acc + x * y
                new.append(acc)
            out.append(new)
        return MatQuad(self.beta, out)

    def __add__(self, other):
        return MatQuad(self.beta, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.e, other.e)])

    def __sub__(self, other):
        return MatQuad(self.beta, [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.e, other.e)])

    def transpose(self) -> "MatQuad":
        return MatQuad(self.beta, [list(c) for c in zip(*self.e)])

    def star(self) -> "MatQuad":
        return MatQuad(self.beta, [[a.conj() for a in c] for c in zip(*self.e)])

    def det(self) -> QuadElem:
        if self.rows != self.cols:
            raise AlgebraError("non-square matrix")
        a = [list(r) for r in self.e]
        n = self.rows
        det = QuadElem._raw(Fraction(1), Fraction(0), self.beta)
        for col in range(n):
            piv = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
            if piv is None:
                return QuadElem._raw(Fraction(0), Fraction(0), self.beta)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            p = a[col][col]
            det = det * p
            pinv = p.inverse()
            for i in range(col + 1, n):
                f = a[i][col]
                if f.is_zero():
                    continue
                f = f * pinv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return det

    def trace(self) -> QuadElem:
        acc = QuadElem._raw(Fraction(0), Fraction(0), self.beta)
        for i in range(self.rows):
            acc = acc + self.e[i][i]
        return acc

    def principal(self, idx) -> "MatQuad":
        return MatQuad(self.beta, [[self.e[i][j] for j in idx] for i in idx])

    def leading_minors(self) -> list:
        return [MatQuad(self.beta, [r[:k] for r in self.e[:k]]).det() for k in range(1, self.rows + 1)]

    def to_complex(self) -> np.ndarray:
        return np.array([[v.to_complex() for v in r] for r in self.e], dtype=complex)


def split_embed(x: Quat) -> MatQuad:
    """2x2 image [[a+c xi, alpha(b-d xi)], [b+d xi, a-c xi]] over K."""
    al, be = x.alg.alpha, x.alg.beta
    K = QuadElem._raw
    return MatQuad(be, [
        [K(x.a, x.c, be), K(al * x.b, -al * x.d, be)],
        [K(x.b, x.d, be), K(x.a, -x.c, be)],
    ])


def mat_split_embed(X: MatQuat) -> MatQuad:
    if X.rows != X.cols:
        raise AlgebraError("non-square matrix")
    be = X.alg.beta
    out = [[None] * (2 * X.cols) for _ in range(2 * X.rows)]
    for i, row in enumerate(X.e):
        for j, x in enumerate(row):
            blk = split_embed(x).e
            out[2 * i][2 * j], out[2 * i][2 * j + 1] = blk[0]
            out[2 * i + 1][2 * j], out[2 * i + 1][2 * j + 1] = blk[1]
    return MatQuad(be, out)


def i_prime(alg: QuatAlgebra, n: int) -> MatQuad:
    """Block diagonal of diag(-alpha, 1)."""
    vals = [(-alg.alpha if k % 2 == 0 else 1) for k in range(2 * n)]
    return MatQuad(alg.beta, [[vals[i] if i == j else 0 for j in range(2 * n)] for i in range(2 * n)])


def i_prime_inv(alg: QuatAlgebra, n: int) -> MatQuad:
    vals = [(Fraction(-1, alg.alpha) if k % 2 == 0 else 1) for k in range(2 * n)]
    return MatQuad(alg.beta, [[vals[i] if i == j else 0 for j in range(2 * n)] for i in range(2 * n)])


def j_prime_entries(n: int) -> list:
    """Block diagonal of [[0,-1],[1,0]] as integer lists."""
    out = [[0] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        out[2 * k][2 * k + 1] = -1
        out[2 * k + 1][2 * k] = 1
    return out


def j_prime(alg: QuatAlgebra, n: int) -> MatQuad:
    return MatQuad(alg.beta, j_prime_entries(n))


def j_prime_inv(alg: QuatAlgebra, n: int) -> MatQuad:
    return MatQuad(alg.beta, [[-v for v in r] for r in j_prime_entries(n)])


def transport_residuals(X: MatQuat) -> tuple[bool, bool]:
    """Check i(X)* = I'^-1 i(X*) I' and transpose(i(X)) = J'^-1 i(X*) J' exactly."""
    n = X.rows
    alg = X.alg
    iX = mat_split_embed(X)
    iXs = mat_split_embed(X.star())
    first = iX.star() == i_prime_inv(alg, n) @ iXs @ i_prime(alg, n)
    second = iX.transpose() == j_prime_inv(alg, n) @ iXs @ j_prime(alg, n)
    return first, second


def reduced_det_trace(X: MatQuat) -> tuple[Fraction, Fraction]:
    """Reduced norm and reduced trace of a square quaternion matrix."""
    M = mat_split_embed(X)
    d, t = M.det(), M.trace()
    if d.q != 0 or t.q != 0:
        raise AlgebraError("reduced det/trace has a nonzero sqrt(beta) part")
    return d.p, t.p


def reduced_det(X: MatQuat) -> Fraction:
    return reduced_det_trace(X)[0]


def reduced_trace(X: MatQuat) -> Fraction:
    if X.rows != X.cols:
        raise AlgebraError("non-square matrix")
    return sum((X.e[i][i].trace() for i in range(X.rows)), Fraction(0))


# ---------------------------------------------------------------------------
# Numeric layer: Hamilton quaternions as 2x2 complex blocks


def hamilton_coords(x: Quat) -> tuple[float, float, float, float]:
    """Coordinates in 1, i, j, k after zeta -> sqrt|alpha| i, xi -> sqrt|beta| j."""
    sa = np.sqrt(-x.alg.alpha)
    sb = np.sqrt(-x.alg.beta)
    return float(x.a), float(x.b) * sa, float(x.c) * sb, float(x.d) * sa * sb


def hamilton_block(a: float, b: float, c: float, d: float) -> np.ndarray:
    return np.array([[a + 1j * c, -(b - 1j * d)], [b + 1j * d, a - 1j * c]], dtype=complex)


def real_embed(X) -> np.ndarray:
    """Complex 2n x 2n image of a quaternion matrix (or a single Quat)."""
    if isinstance(X, Quat):
        return hamilton_block(*hamilton_coords(X))
    out = np.zeros((2 * X.rows, 2 * X.cols), dtype=complex)
    for i, row in enumerate(X.e):
        for j, x in enumerate(row):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = hamilton_block(*hamilton_coords(x))
    return out


def j_prime_numeric(n: int) -> np.ndarray:
    return np.array(j_prime_entries(n), dtype=float)


def quaternionic_residual(x: np.ndarray) -> float:
    """Residual of conj(x) J' = J' x, the image condition for M_n(H)."""
    n = x.shape[0] // 2
    J = j_prime_numeric(n)
    return float(np.abs(x.conj() @ J - J @ x).max(initial=0.0))


def lambda_pairing(tau: MatQuat, sigma: MatQuat) -> Fraction:
    """Half the reduced trace of tau*sigma."""
    if tau.cols != sigma.rows or tau.rows != sigma.cols:
        raise AlgebraError("size mismatch")
    return reduced_trace(tau @ sigma) / 2
