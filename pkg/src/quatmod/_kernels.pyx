# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the Euler-product and Pfaffian loops."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, cos, sin, fabs, hypot

cnp.import_array()


cdef inline double complex cpow_real(double p, double complex e):
    # p^e for real p > 0
    cdef double lp = log(p)
    cdef double mag = exp(e.real * lp)
    cdef double ang = e.imag * lp
    return mag * (cos(ang) + 1j * sin(ang))


cdef inline double cabs_(double complex z):
    return hypot(z.real, z.imag)


def dirichlet_euler(const double[:] primes, const double complex[:] chi, double complex s):
    cdef Py_ssize_t i
    cdef double complex val = 1.0, d
    for i in range(primes.shape[0]):
        d = 1.0 - chi[i] * cpow_real(primes[i], -s)
        if cabs_(d) < 1e-12:
            raise ZeroDivisionError(f"pole at p={int(primes[i])}")
        val = val / d
    return complex(val.real, val.imag)


def satake_euler(const double[:] primes, const double complex[:] chi,
                 const double complex[:, :] alphas, double complex s, int n, int variant):
    cdef Py_ssize_t i, j
    cdef double p
    cdef double complex val = 1.0, c, first, x, a, d
    for i in range(primes.shape[0]):
        p = primes[i]
        c = chi[i]
        first = cpow_real(p, 2 * n - 2) * c * c
        if variant == 1:
            first = first * cpow_real(p, -2 * s)
        x = c * cpow_real(p, n - 1 - s)
        d = 1.0 - first
        if cabs_(d) < 1e-12:
            raise ZeroDivisionError(f"pole at p={int(p)}")
        val = val / d
        for j in range(n):
            a = alphas[i, j]
            d = (1.0 - a * x) * (1.0 - x / a)
            if cabs_(1.0 - a * x) < 1e-12 or cabs_(1.0 - x / a) < 1e-12:
                raise ZeroDivisionError(f"pole at p={int(p)}")
            val = val / d
    return complex(val.real, val.imag)


def pfaffian(A_in):
    cdef double complex[:, :] A = np.array(A_in, dtype=complex)
    cdef Py_ssize_t n = A.shape[0], k, i, j, kp
    cdef double best, cur
    cdef double complex pf = 1.0, tmp, piv
    cdef double complex[:] tau = np.zeros(n, dtype=complex)
    cdef double complex[:] col = np.zeros(n, dtype=complex)
    for k in range(0, n - 1, 2):
        kp = k + 1
        best = cabs_(A[k + 1, k])
        for i in range(k + 2, n):
            cur = cabs_(A[i, k])
            if cur > best:
                best = cur
                kp = i
        if kp != k + 1:
            for j in range(n):
                tmp = A[k + 1, j]; A[k + 1, j] = A[kp, j]; A[kp, j] = tmp
            for i in range(n):
                tmp = A[i, k + 1]; A[i, k + 1] = A[i, kp]; A[i, kp] = tmp
            pf = -pf
        if A[k + 1, k] == 0:
            return 0j
        piv = A[k, k + 1]
        pf = pf * piv
        if k + 2 < n:
            for i in range(k + 2, n):
                tau[i] = A[k, i] / piv
                col[i] = A[i, k + 1]
            for i in range(k + 2, n):
                for j in range(k + 2, n):
                    A[i, j] = A[i, j] + tau[i] * col[j] - col[i] * tau[j]
    return complex(pf.real, pf.imag)
