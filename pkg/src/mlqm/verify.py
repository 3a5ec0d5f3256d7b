"""Self-verification suite.

Every closed form in the package is checked here against an independent
numerical route: bisection on the quantization condition vs the spectrum
sum, substitution residuals for characteristic roots, the banded
finite-difference eigensolver vs the analytic levels, forward/inverse
dispersion round-trips, central-difference Jacobians, discrete ODE
residuals, and quadrature normalization.  The CLI ``verify`` subcommand and
the acceptance tests both run these checks; thresholds are fixed here, not
tuned per call site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import box, fd, momentum
from .params import ModelParams

_SEED = 20260809

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    threshold: float
    detail: str = ""


def _result(name: str, worst: float, threshold: float, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(worst <= threshold),
        worst=float(worst),
        threshold=float(threshold),
        detail=detail,
    )


def check_spectrum_exactness(n_max: int = 50,
                             betas=(1e-6, 0.01, 0.25, 0.5, 1.0),
                             fault: float = 0.0) -> CheckResult:
    """Quantization-condition root vs closed-form sum, relative 1e-12.

    ``fault`` multiplies the closed-form side by (1 + fault); nonzero values
    are the injected-fault hook used to prove the check can fail.
    """
    worst = 0.0
    for beta in betas:
        params = ModelParams(beta=beta)
        for n in range(1, n_max + 1):
            e0, shift = box.energy_terms(n, params)
            closed = (e0 + shift) * (1.0 + fault)
            rooted = box.energy_from_condition(n, params)
            worst = max(worst, abs(rooted - closed) / closed)
    return _result("spectrum-exactness", worst, 1e-12,
                   f"n=1..{n_max}, beta in {list(betas)}")


def quartic_residual(root_sq: float, energy: float, params: ModelParams) -> float:
    """|2 beta hbar^4 r^4 - hbar^2 r^2 - 2 m E| / (2mE) at r^2 = root_sq.

    The quartic is even, so a signed square covers all four exponents
    (+/-k_real give root_sq > 0, +/-i*k_osc give root_sq < 0).  Evaluated in
    exact rational arithmetic: the residual then measures the returned roots
    alone, free of the substitution's own cancellation.
    """
    s = Fraction(root_sq)
    two_me = Fraction(2) * Fraction(params.mass) * Fraction(energy)
    val = (Fraction(2) * Fraction(params.beta) * Fraction(params.hbar) ** 4 * s * s
           - Fraction(params.hbar) ** 2 * s - two_me)
    return float(abs(val) / two_me)


def check_quartic_residuals(ndraws: int = 100) -> CheckResult:
    """All four characteristic exponents satisfy the quartic to 1e-10 relative."""
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for _ in range(ndraws):
        energy = rng.uniform(0.0, 1000.0) or 1.0
        beta = rng.uniform(0.0, 1.0) or 1.0
        params = ModelParams(beta=beta)
        roots = box.characteristic_roots(energy, params)
        for r in (roots.k_real, -roots.k_real):
            worst = max(worst, quartic_residual(r * r, energy, params))
        for r in (roots.k_osc, -roots.k_osc):
            worst = max(worst, quartic_residual(-(r * r), energy, params))
    return _result("quartic-residuals", worst, 1e-10,
                   f"{ndraws} draws, E in (0, 1e3], beta in (0, 1]")


def check_quartic_hand_case() -> CheckResult:
    """E=1, beta=1/2 factors the quartic as (k^2 - 2)(k^2 + 1): roots sqrt(2), 1."""
    roots = box.characteristic_roots(1.0, ModelParams(beta=0.5))
    worst = max(abs(roots.k_real - math.sqrt(2.0)) / math.sqrt(2.0),
                abs(roots.k_osc - 1.0))
    return _result("quartic-hand-case", worst, 1e-12, "E=1, beta=0.5")


def check_fd_oracle(grid_points: int = 1999, betas=(0.0, 0.01, 0.25, 1.0)) -> CheckResult:
    """Three lowest FD eigenvalues vs the analytic spectrum.

    Relative tolerance 1e-4 for n=1, 1e-3 for n=2,3; ``worst`` is the largest
    gap/tolerance ratio, so the threshold is 1.
    """
    worst = 0.0
    for beta in betas:
        params = ModelParams(beta=beta)
        spectrum = fd.solve_lowest(fd.FdProblem(params=params, grid_points=grid_points), count=3)
        for n in (1, 2, 3):
            e0, shift = box.energy_terms(n, params)
            target = e0 + shift
            rel = abs(float(spectrum.eigenvalues[n - 1]) - target) / target
            tol = 1e-4 if n == 1 else 1e-3
            worst = max(worst, rel / tol)
    return _result("fd-oracle-agreement", worst, 1.0,
                   f"N={grid_points}, beta in {list(betas)}; worst is gap/tol ratio")


def check_fd_convergence(grids=(250, 500, 1000, 2000), betas=(0.1, 0.0)) -> CheckResult:
    """Observed order of the discretization stays within [1.8, 2.2]."""
    worst = 0.0
    slopes = []
    for beta in betas:
        slope = fd.convergence_study(ModelParams(beta=beta), grids, level=1)
        slopes.append(round(slope, 4))
        worst = max(worst, abs(slope - 2.0))
    return _result("fd-convergence-order", worst, 0.2,
                   f"grids {list(grids)}, slopes {slopes}")


def check_fd_discrete_crosscheck(grid_sizes=(64, 100, 250),
                                 betas=(0.0, 0.01, 0.25, 1.0)) -> CheckResult:
    """Solver output vs the exact discrete eigenvalue formula, 1e-10 relative.

    This isolates eigensolver error: both sides live on the same grid, so
    discretization error cancels identically.
    """
    worst = 0.0
    for n_grid in grid_sizes:
        for beta in betas:
            problem = fd.FdProblem(params=ModelParams(beta=beta), grid_points=n_grid)
            spectrum = fd.solve_lowest(problem, count=3)
            for n in (1, 2, 3):
                exact = fd.discrete_eigenvalue(n, problem)
                worst = max(worst, abs(float(spectrum.eigenvalues[n - 1]) - exact) / exact)
    return _result("fd-discrete-crosscheck", worst, 1e-10,
                   f"N in {list(grid_sizes)}, beta in {list(betas)}, n=1..3")


def check_dispersion_roundtrip(ndraws: int = 1000) -> CheckResult:
    """dispersion_solve(dispersion_forward(k)) returns k to 1e-12."""
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    for _ in range(ndraws):
        k = rng.uniform(-10.0, 10.0)
        beta = rng.uniform(0.0, 1.0)
        params = ModelParams(beta=beta)
        p = momentum.dispersion_forward(k, params)
        back = momentum.dispersion_solve(p, params).k_exact
        worst = max(worst, abs(back - k) / max(1.0, abs(k)))
    return _result("dispersion-roundtrip", worst, 1e-12,
                   f"{ndraws} draws, k in [-10, 10], beta in [0, 1]")


def check_perturbative_slope(p: float = 1.0, betas=(1e-4, 1e-3, 1e-2)) -> CheckResult:
    """|k_exact - k_pert| scales as beta^2: log-log slope 2 +/- 0.05."""
    gaps = []
    for beta in betas:
        sol = momentum.dispersion_solve(p, ModelParams(beta=beta))
        gaps.append(abs(sol.k_exact - sol.k_pert))
    slope, _ = np.polyfit(np.log(betas), np.log(gaps), 1)
    return _result("dispersion-perturbative-slope", abs(float(slope) - 2.0), 0.05,
                   f"p={p}, slope={float(slope):.4f}")


def _central_dk_dp(p: float, params: ModelParams, step: float = 1e-6) -> float:
    hi = momentum.dispersion_solve(p + step, params).k_exact
    lo = momentum.dispersion_solve(p - step, params).k_exact
    return (hi - lo) / (2.0 * step)


def check_jacobian_first_order(beta: float = 1e-4, p: float = 1.0) -> CheckResult:
    """First-order Jacobian (1 - 3 beta p^2)/hbar vs central-difference dk/dp."""
    params = ModelParams(beta=beta)
    first_order = (1.0 - 3.0 * beta * p * p) / params.hbar
    cd = _central_dk_dp(p, params)
    worst = abs(first_order - cd) / abs(cd)
    return _result("jacobian-first-order-gap", worst, 1e-6, f"beta={beta}, p={p}")


def check_jacobian_central_difference(ndraws: int = 50) -> CheckResult:
    """Analytic dk/dp vs central differences on random (p, beta), 1e-8 relative."""
    rng = np.random.default_rng(_SEED + 2)
    worst = 0.0
    for _ in range(ndraws):
        p = rng.uniform(-2.0, 2.0)
        beta = rng.uniform(0.0, 1.0)
        params = ModelParams(beta=beta)
        analytic = momentum.normalization_jacobian(p, params)
        cd = _central_dk_dp(p, params)
        worst = max(worst, abs(analytic - cd) / abs(analytic))
    return _result("jacobian-central-difference", worst, 1e-8,
                   f"{ndraws} draws, p in [-2, 2], beta in [0, 1]")


def check_momentum_ode_residual(beta: float = 1e-4, p: float = 1.0,
                                step: float = 1e-3) -> CheckResult:
    """Sampled eigenfunction satisfies the deformed ODE under central differences.

    max |beta hbar^3 u''' - hbar u' + i p u| <= 1e-6 at beta = 1e-4, where the
    O(h^2) stencil error and the O(beta^2) first-order truncation both sit
    below the bound.
    """
    params = ModelParams(beta=beta)
    hbar = params.hbar
    x = (np.arange(1005) - 2) * step  # [0, 1] plus two ghost points each side
    u = momentum.eigenfunction_value(p, x, params)
    ui = u[2:-2]
    d1 = (u[3:-1] - u[1:-3]) / (2.0 * step)
    d3 = (u[4:] - 2.0 * u[3:-1] + 2.0 * u[1:-3] - u[:-4]) / (2.0 * step**3)
    resid = beta * hbar**3 * d3 - hbar * d1 + 1j * p * ui
    worst = float(np.abs(resid).max())
    return _result("momentum-ode-residual", worst, 1e-6,
                   f"beta={beta}, p={p}, h={step}, {ui.size} interior points")


def check_cubic_residuals(ndraws: int = 100) -> CheckResult:
    """Characteristic cubic roots satisfy their polynomial.

    Bound max(1e-10*|p|, 1e-12) per root; ``worst`` is residual/bound, so the
    threshold is 1.
    """
    rng = np.random.default_rng(_SEED + 3)
    worst = 0.0
    for _ in range(ndraws):
        p = rng.uniform(-10.0, 10.0)
        beta = 10.0 ** rng.uniform(-4.0, 0.0)
        roots = momentum.characteristic_cubic_roots(p, ModelParams(beta=beta))
        bound = max(1e-10 * abs(p), 1e-12)
        worst = max(worst, max(roots.residuals) / bound)
    return _result("cubic-residuals", worst, 1.0,
                   f"{ndraws} draws; worst is residual/bound ratio")


def check_cubic_hand_case() -> CheckResult:
    """p=0, beta=1/2 factors the cubic as L(L^2/2 - 1): roots 0, +/-sqrt(2)."""
    roots = momentum.characteristic_cubic_roots(0.0, ModelParams(beta=0.5))
    expected = (0.0, -math.sqrt(2.0), math.sqrt(2.0))
    worst = max(abs(r - e) for r, e in zip(roots.roots, expected))
    return _result("cubic-hand-case", worst, 1e-12, "p=0, beta=0.5")


def check_normalization_quadrature(levels=(1, 2, 3, 4, 5), points: int = 10_000) -> CheckResult:
    """Trapezoid quadrature of psi_n^2 on a uniform grid equals 1 to 1e-8."""
    params = ModelParams()
    x = np.linspace(0.0, params.box_width, points)
    worst = 0.0
    for n in levels:
        sample = box.eigenfunction(n, params, x)
        worst = max(worst, abs(float(_trapezoid(sample.psi**2, x)) - 1.0))
    return _result("normalization-quadrature", worst, 1e-8,
                   f"n in {list(levels)}, {points} points")


def check_boundary_zeros(levels=(1, 2, 3, 4, 5)) -> CheckResult:
    """Eigenfunction samples vanish identically at both walls."""
    params = ModelParams()
    x = np.linspace(0.0, params.box_width, 1001)
    worst = 0.0
    for n in levels:
        sample = box.eigenfunction(n, params, x)
        worst = max(worst, abs(float(sample.psi[0])), abs(float(sample.psi[-1])))
    return _result("boundary-zeros", worst, 0.0, "exact zeros required at x=0 and x=a")


def check_sweep_beta_ordering(betas=(0.0, 0.25, 0.5, 0.75, 1.0)) -> CheckResult:
    """E(n, beta) strictly increases with beta at every continuous n > 0."""
    n_grid = np.linspace(0.0, 5.0, 101)[1:]  # skip n=0 where all curves meet
    curves = []
    for beta in betas:
        params = ModelParams(beta=beta)
        curves.append(np.array([sum(box.energy_terms(float(n), params)) for n in n_grid]))
    worst = -math.inf
    for low, high in zip(curves, curves[1:]):
        worst = max(worst, float((low - high).max()))
    return _result("sweep-beta-ordering", worst, 0.0,
                   f"betas {list(betas)}, n in (0, 5]; worst is max E(low beta) - E(high beta)")


def run_all(quick: bool = False, fault_spectrum: float = 0.0) -> list[CheckResult]:
    """Run the full suite; ``quick`` shrinks the FD grids only."""
    fd_n = 249 if quick else 1999
    study_grids = (100, 200, 400) if quick else (250, 500, 1000, 2000)
    cross_grids = (64, 100) if quick else (64, 100, 250)
    return [
        check_spectrum_exactness(fault=fault_spectrum),
        check_quartic_residuals(),
        check_quartic_hand_case(),
        check_fd_oracle(grid_points=fd_n),
        check_fd_convergence(grids=study_grids),
        check_fd_discrete_crosscheck(grid_sizes=cross_grids),
        check_dispersion_roundtrip(),
        check_perturbative_slope(),
        check_jacobian_first_order(),
        check_jacobian_central_difference(),
        check_momentum_ode_residual(),
        check_cubic_residuals(),
        check_cubic_hand_case(),
        check_normalization_quadrature(),
        check_boundary_zeros(),
        check_sweep_beta_ordering(),
    ]
