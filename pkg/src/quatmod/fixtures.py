"""JSON formats for algebras, exact quaternion matrices and complex points.

Exact matrices::

    {"algebra": {"alpha": -1, "beta": -3},
     "matrix": [[["1", "0", "0", "0"], ["1/2", "0", "1", "0"]], ...],
     "m": 1, "r": 1}

Each quaternion is the 4-tuple of coordinates in 1, zeta, xi, zeta*xi given as
"num/den" strings (plain integers are accepted too).  Complex matrices are
row-major arrays of [re, im] pairs, optionally with a "realization" tag.
"""
from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .qalg import MatQuat, Quat, QuatAlgebra


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def quat_to_json(q: Quat) -> list:
    return [frac_str(c) for c in q.coords]


def algebra_to_json(alg: QuatAlgebra) -> dict:
    return {"alpha": alg.alpha, "beta": alg.beta}


def matrix_to_json(X: MatQuat, **header) -> dict:
    doc = {"algebra": algebra_to_json(X.alg), "matrix": [[quat_to_json(q) for q in row] for row in X.e]}
    doc.update(header)
    return doc


def algebra_from_json(doc) -> QuatAlgebra:
    return QuatAlgebra(int(doc["alpha"]), int(doc["beta"]))


def quat_from_json(alg: QuatAlgebra, v) -> Quat:
    if isinstance(v, (int, str)):
        return Quat(alg, Fraction(v))
    if len(v) != 4:
        raise ValueError("a quaternion needs 4 coordinates")
    return Quat(alg, *(Fraction(str(c)) for c in v))


def matrix_from_json(doc, alg: QuatAlgebra | None = None) -> MatQuat:
    if alg is None:
        if "algebra" not in doc:
            raise ValueError("matrix fixture has no algebra")
        alg = algebra_from_json(doc["algebra"])
    rows = doc["matrix"] if isinstance(doc, dict) else doc
    return MatQuat(alg, [[quat_from_json(alg, v) for v in row] for row in rows])


def complex_to_json(A: np.ndarray) -> list:
    A = np.asarray(A, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in A]


def complex_from_json(rows) -> np.ndarray:
    if isinstance(rows, dict):
        rows = rows["matrix"]
    out = []
    for row in rows:
        out.append([complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in row])
    return np.array(out, dtype=complex)


def load_json(path: str):
    with open(path) as fh:
        return json.load(fh)
