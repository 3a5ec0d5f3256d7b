"""Backend parity and correctness of the tridiagonal kernels.

The correctness oracles here are dense LAPACK routines via numpy, which are
independent of the bisection/inverse-iteration path under test.
"""

import numpy as np
import pytest

from mlqm import kernels
from mlqm._kernels_py import solve_shifted as py_solve
from mlqm._kernels_py import sturm_count as py_count

_SAFMIN = np.finfo(float).tiny


def _random_tridiag(rng, n):
    d = rng.uniform(-2.0, 2.0, size=n)
    e = rng.uniform(-1.5, 1.5, size=n - 1)
    return d, e


def _dense(d, e):
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


def _pivmin(e):
    return _SAFMIN * max(1.0, float((e * e).max()))


def test_sturm_count_matches_dense_eigensolver():
    rng = np.random.default_rng(3)
    for _ in range(20):
        d, e = _random_tridiag(rng, 50)
        eigs = np.linalg.eigvalsh(_dense(d, e))
        for sigma in rng.uniform(-5.0, 5.0, size=10):
            assert py_count(d, e * e, float(sigma), _pivmin(e)) == int((eigs < sigma).sum())


def test_sturm_count_is_monotone_in_sigma():
    rng = np.random.default_rng(4)
    d, e = _random_tridiag(rng, 200)
    sigmas = np.sort(rng.uniform(-6.0, 6.0, size=40))
    counts = [py_count(d, e * e, float(s), _pivmin(e)) for s in sigmas]
    assert counts == sorted(counts)


def test_solve_shifted_matches_dense_solve():
    rng = np.random.default_rng(5)
    for _ in range(20):
        d, e = _random_tridiag(rng, 40)
        sigma = float(rng.uniform(-3.0, 3.0))
        b = rng.standard_normal(40)
        x = py_solve(d, e, sigma, b, _pivmin(e))
        dense = _dense(d, e) - sigma * np.eye(40)
        if abs(np.linalg.det(dense)) < 1e-10:
            continue
        assert np.allclose(dense @ x, b, rtol=0.0, atol=1e-9 * np.abs(b).max() + 1e-12)


def test_solve_shifted_near_singular_shift_is_usable():
    # shift a few ulps off an eigenvalue: the solve must return a huge vector
    # whose direction is the eigenvector, which is what inverse iteration uses
    rng = np.random.default_rng(6)
    d, e = _random_tridiag(rng, 60)
    dense = _dense(d, e)
    eigs, vecs = np.linalg.eigh(dense)
    sigma = eigs[3] + 1e-13
    x = py_solve(d, e, sigma, rng.standard_normal(60), _pivmin(e))
    x = x / np.linalg.norm(x)
    target = vecs[:, 3]
    assert min(np.abs(x - target).max(), np.abs(x + target).max()) <= 1e-6


@pytest.mark.skipif(not kernels.compiled_available(), reason="compiled kernels not built")
def test_backends_are_bit_identical():
    from mlqm import _band_kernels
    rng = np.random.default_rng(7)
    for n in (8, 63, 500):
        d, e = _random_tridiag(rng, n)
        pivmin = _pivmin(e)
        for sigma in rng.uniform(-4.0, 4.0, size=8):
            assert _band_kernels.sturm_count(d, e * e, float(sigma), pivmin) == \
                py_count(d, e * e, float(sigma), pivmin)
        b = rng.standard_normal(n)
        for sigma in rng.uniform(-4.0, 4.0, size=4):
            xc = _band_kernels.solve_shifted(d, e, float(sigma), b, pivmin)
            xp = py_solve(d, e, float(sigma), b, pivmin)
            assert np.array_equal(xc, xp)


def test_backend_switching():
    initial = kernels.active_backend()
    assert initial in ("compiled", "python")
    try:
        kernels.use_backend("python")
        assert kernels.active_backend() == "python"
        if kernels.compiled_available():
            kernels.use_backend("compiled")
            assert kernels.active_backend() == "compiled"
        with pytest.raises(ValueError):
            kernels.use_backend("fortran")
    finally:
        kernels.use_backend(initial)


@pytest.mark.skipif(not kernels.compiled_available(), reason="compiled kernels not built")
def test_full_solve_identical_across_backends():
    from mlqm import FdProblem, ModelParams, solve_lowest
    problem = FdProblem(params=ModelParams(beta=0.25), grid_points=499)
    try:
        kernels.use_backend("compiled")
        spec_c = solve_lowest(problem, 3)
        kernels.use_backend("python")
        spec_p = solve_lowest(problem, 3)
    finally:
        kernels.use_backend("compiled" if kernels.compiled_available() else "python")
    assert np.array_equal(spec_c.eigenvalues, spec_p.eigenvalues)
    assert np.array_equal(spec_c.eigenvectors, spec_p.eigenvectors)
    assert np.array_equal(spec_c.residual_norms, spec_p.residual_norms)
