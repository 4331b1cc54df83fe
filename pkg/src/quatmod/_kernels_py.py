"""Reference implementations of the numeric kernels in plain Python/numpy."""
from __future__ import annotations

import numpy as np


def dirichlet_euler(primes: np.ndarray, chi: np.ndarray, s: complex) -> complex:
    """prod 1 / (1 - chi_p p^-s)."""
    val = 1 + 0j
    for p, c in zip(primes.tolist(), chi.tolist()):
        d = 1 - c * p ** (-s)
        if abs(d) < 1e-12:
            raise ZeroDivisionError(f"pole at p={int(p)}")
        val /= d
    return val


def satake_euler(primes: np.ndarray, chi: np.ndarray, alphas: np.ndarray, s: complex,
                 n: int, variant: int) -> complex:
    """Product of the full local factors; variant 1 adds p^-2s to the first factor."""
    val = 1 + 0j
    for idx, p in enumerate(primes.tolist()):
        c = complex(chi[idx])
        first = p ** (2 * n - 2) * c * c
        if variant == 1:
            first *= p ** (-2 * s)
        x = c * p ** (n - 1 - s)
        dens = [1 - first]
        for a in alphas[idx].tolist():
            dens.append(1 - a * x)
            dens.append(1 - x / a)
        for d in dens:
            if abs(d) < 1e-12:
                raise ZeroDivisionError(f"pole at p={int(p)}")
            val /= d
    return val


def pfaffian(A: np.ndarray) -> complex:
    """Parlett-Reid skew tridiagonalization with partial pivoting."""
    A = np.array(A, dtype=complex)
    n = A.shape[0]
    pf = 1 + 0j
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(A[k + 1:, k]).argmax())
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        if A[k + 1, k] == 0:
            return 0j
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            col = A[k + 2:, k + 1].copy()
            A[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return complex(pf)
