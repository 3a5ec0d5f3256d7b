# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the tridiagonal eigensolver hot loops.

Mirrors ``mlqm._kernels_py`` operation for operation; the extension is
compiled with -ffp-contract=off, so results are bit-identical to the
pure-Python fallback.
"""

import numpy as np

from libc.math cimport fabs

BACKEND = "compiled"


def sturm_count(double[::1] diag, double[::1] off_sq, double sigma, double pivmin):
    """Number of eigenvalues of a symmetric tridiagonal matrix below sigma."""
    cdef Py_ssize_t i, n = diag.shape[0]
    cdef double q = diag[0] - sigma
    cdef int count
    if fabs(q) <= pivmin:
        q = -pivmin
    count = 1 if q < 0.0 else 0
    for i in range(1, n):
        q = (diag[i] - sigma) - off_sq[i - 1] / q
        if fabs(q) <= pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def solve_shifted(double[::1] diag, double[::1] off, double sigma, double[::1] rhs, double pivmin):
    """Solve (T - sigma*I) x = rhs by tridiagonal LU with partial pivoting."""
    cdef Py_ssize_t i, n = diag.shape[0]
    cdef double piv, m, low, ci1, ui1, old_u, old_s, tmp

    c_arr = np.empty(n)
    u_arr = np.empty(n)
    s_arr = np.zeros(n)
    b_arr = np.array(rhs, copy=True)
    x_arr = np.empty(n)
    cdef double[::1] c = c_arr
    cdef double[::1] u = u_arr
    cdef double[::1] s = s_arr
    cdef double[::1] b = b_arr
    cdef double[::1] x = x_arr

    for i in range(n):
        c[i] = diag[i] - sigma
    for i in range(n - 1):
        u[i] = off[i]
    u[n - 1] = 0.0

    for i in range(n - 1):
        low = off[i]
        if fabs(c[i]) >= fabs(low):
            piv = c[i]
            if fabs(piv) <= pivmin:
                piv = pivmin if piv >= 0.0 else -pivmin
                c[i] = piv
            m = low / piv
            c[i + 1] = c[i + 1] - m * u[i]
            u[i + 1] = u[i + 1] - m * s[i]
            b[i + 1] = b[i + 1] - m * b[i]
        else:
            piv = low
            m = c[i] / piv
            ci1 = c[i + 1]
            ui1 = u[i + 1]
            c[i] = piv
            old_u = u[i]
            old_s = s[i]
            u[i] = ci1
            s[i] = ui1
            c[i + 1] = old_u - m * ci1
            u[i + 1] = old_s - m * ui1
            tmp = b[i]
            b[i] = b[i + 1]
            b[i + 1] = tmp
            b[i + 1] = b[i + 1] - m * b[i]

    if fabs(c[n - 1]) <= pivmin:
        c[n - 1] = pivmin if c[n - 1] >= 0.0 else -pivmin

    x[n - 1] = b[n - 1] / c[n - 1]
    if n > 1:
        x[n - 2] = (b[n - 2] - u[n - 2] * x[n - 1]) / c[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (b[i] - u[i] * x[i + 1] - s[i] * x[i + 2]) / c[i]
    return x_arr
