"""Pure-Python fallback for the tridiagonal eigensolver kernels.

Same algorithms, same floating-point operation order as the compiled
extension (which is built without FP contraction), so the two backends
produce bit-identical doubles; the parity test asserts exact equality.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def sturm_count(diag, off_sq, sigma: float, pivmin: float) -> int:
    """Number of eigenvalues of a symmetric tridiagonal matrix below sigma.

    ``diag`` is the main diagonal (n,), ``off_sq`` the squared off-diagonal
    (n-1,).  Runs the LDL^T pivot recurrence of T - sigma*I and counts
    negative pivots (Sylvester inertia).  Pivots within pivmin of zero are
    replaced by -pivmin, the standard guard that keeps the count well
    defined and monotone in sigma.
    """
    d = diag.tolist()
    e2 = off_sq.tolist()
    q = d[0] - sigma
    if abs(q) <= pivmin:
        q = -pivmin
    count = 1 if q < 0.0 else 0
    for i in range(1, len(d)):
        q = (d[i] - sigma) - e2[i - 1] / q
        if abs(q) <= pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def solve_shifted(diag, off, sigma: float, rhs, pivmin: float):
    """Solve (T - sigma*I) x = rhs for symmetric tridiagonal T.

    Gaussian elimination with partial pivoting; row swaps introduce a second
    superdiagonal.  Pivots smaller in magnitude than pivmin are replaced by
    +/-pivmin so that a shift sitting on an eigenvalue yields a huge but
    normalizable solution (exactly what inverse iteration wants) instead of
    a division by zero.
    """
    d = diag.tolist()
    e = off.tolist()
    b = rhs.tolist()
    n = len(d)
    c = [di - sigma for di in d]  # working diagonal
    u = e + [0.0]                 # first superdiagonal of the working rows
    s = [0.0] * n                 # second superdiagonal (filled by swaps)

    for i in range(n - 1):
        low = e[i]  # subdiagonal entry of row i+1, untouched until now
        if abs(c[i]) >= abs(low):
            piv = c[i]
            if abs(piv) <= pivmin:
                piv = pivmin if piv >= 0.0 else -pivmin
                c[i] = piv
            m = low / piv
            c[i + 1] = c[i + 1] - m * u[i]
            u[i + 1] = u[i + 1] - m * s[i]
            b[i + 1] = b[i + 1] - m * b[i]
        else:
            # swap rows i and i+1; |low| > |c[i]| >= 0 so low != 0
            piv = low
            m = c[i] / piv
            ci1 = c[i + 1]
            ui1 = u[i + 1]
            c[i] = piv
            old_u, old_s = u[i], s[i]
            u[i] = ci1
            s[i] = ui1
            c[i + 1] = old_u - m * ci1
            u[i + 1] = old_s - m * ui1
            b[i], b[i + 1] = b[i + 1], b[i]
            b[i + 1] = b[i + 1] - m * b[i]

    if abs(c[n - 1]) <= pivmin:
        c[n - 1] = pivmin if c[n - 1] >= 0.0 else -pivmin

    x = [0.0] * n
    x[n - 1] = b[n - 1] / c[n - 1]
    if n > 1:
        x[n - 2] = (b[n - 2] - u[n - 2] * x[n - 1]) / c[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (b[i] - u[i] * x[i + 1] - s[i] * x[i + 2]) / c[i]
    return np.array(x)
