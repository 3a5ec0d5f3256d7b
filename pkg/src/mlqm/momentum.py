"""Momentum eigenfunctions of the deformed momentum operator.

Acting on exp(i k x), the operator P = (hbar/i) d/dx [1 + beta ((hbar/i) d/dx)^2]
multiplies by the dispersion

    p(k) = hbar k + beta hbar^3 k^3,

which is strictly increasing in k, so every real eigenvalue p picks a unique
real wavenumber k(p).  The eigenvalue ODE

    beta hbar^3 u''' - hbar u' + i p u = 0

has characteristic cubic beta hbar^3 L^3 - hbar L + i p = 0 with exactly one
purely imaginary root L = i k(p) -- the bounded plane-wave branch; the other
two roots carry nonzero real parts and are not normalizable, so they are
exposed for completeness but never enter the eigenfunction.  To first order
in beta the delta-normalized eigenfunction is

    u_p(x) = sqrt((1 - 3 beta p^2) / (2 pi hbar)) * exp(i (p - beta p^3) x / hbar),

whose squared amplitude is the first-order normalization Jacobian
(dk/dp) / (2 pi).  Radical closed forms for the cubic are avoided on
purpose: roots come from the monotone real solve plus quadratic deflation
and are certified by residual substitution, which is verifiable where a
transcribed radical expression is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveInput, OutsideFirstOrderDomain
from .params import ModelParams

_NEWTON_RTOL = 1e-14
_NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class DispersionSolution:
    """Inversion of p = hbar k + beta hbar^3 k^3 at one momentum.

    k_exact solves the cubic; k_pert = (p - beta p^3)/hbar is its first-order
    approximation; jacobian = dk/dp = 1/(hbar + 3 beta hbar^3 k_exact^2) > 0.
    """

    p: float
    k_exact: float
    k_pert: float
    jacobian: float


@dataclass(frozen=True)
class CubicRoots:
    """All three characteristic exponents with substitution residuals.

    roots[0] is the purely imaginary physical root i*k(p); roots[1] and
    roots[2] are the unbounded branches, ordered by real part.
    """

    roots: tuple[complex, complex, complex]
    residuals: tuple[float, float, float]


@dataclass(frozen=True)
class MomentumEigenfunction:
    """Amplitude and phase wavenumber of the first-order eigenfunction."""

    p: float
    amplitude: float
    wavenumber: float


def dispersion_forward(k: float, params: ModelParams) -> float:
    """Momentum eigenvalue of the plane wave exp(i k x): hbar k + beta hbar^3 k^3."""
    hbar = params.hbar
    return hbar * k + params.beta * hbar**3 * k**3


def dispersion_solve(p: float, params: ModelParams) -> DispersionSolution:
    """Unique real wavenumber with dispersion_forward(k) = p.

    Newton from the perturbative start, safeguarded by the bracket
    [-|p|/hbar, |p|/hbar] that the monotone cubic guarantees; tolerance
    1e-14 relative on the momentum residual.
    """
    hbar, beta = params.hbar, params.beta
    k_pert = (p - beta * p**3) / hbar
    if p == 0.0:
        return DispersionSolution(p=p, k_exact=0.0, k_pert=k_pert, jacobian=1.0 / hbar)
    if beta == 0.0:
        k = p / hbar
        return DispersionSolution(p=p, k_exact=k, k_pert=k_pert, jacobian=1.0 / hbar)
    bound = abs(p) / hbar
    lo, hi = (0.0, bound) if p > 0 else (-bound, 0.0)
    k = min(max(k_pert, lo), hi)
    tol = _NEWTON_RTOL * max(1.0, abs(p))
    b3 = beta * hbar**3
    for _ in range(_NEWTON_MAX_ITER):
        g = hbar * k + b3 * k**3 - p
        if abs(g) <= tol:
            break
        if g > 0.0:
            hi = k
        else:
            lo = k
        step = g / (hbar + 3.0 * b3 * k * k)
        k_new = k - step
        if not lo < k_new < hi:
            k_new = 0.5 * (lo + hi)
        k = k_new
    jacobian = 1.0 / (hbar + 3.0 * b3 * k * k)
    return DispersionSolution(p=p, k_exact=k, k_pert=k_pert, jacobian=jacobian)


def normalization_jacobian(p: float, params: ModelParams) -> float:
    """Exact delta-normalization Jacobian dk/dp; (1 - 3 beta p^2)/hbar + O(beta^2)."""
    return dispersion_solve(p, params).jacobian


def characteristic_cubic_roots(p: float, params: ModelParams) -> CubicRoots:
    """All roots of beta hbar^3 L^3 - hbar L + i p = 0, with residuals.

    The physical root i*k(p) comes from the monotone dispersion solve; the
    remaining quadratic factor L^2 + i k L + (k^2 - 1/(beta hbar^2)) is
    solved directly (its discriminant 3 k^2 + 4/(beta hbar^2) is always a
    positive real, so the unbounded pair is exact to rounding).
    """
    if not params.beta > 0:
        raise NonPositiveInput(f"characteristic cubic needs beta > 0, got {params.beta!r}")
    hbar, beta = params.hbar, params.beta
    k = dispersion_solve(p, params).k_exact
    root0 = complex(0.0, k)
    half_r = 0.5 * math.sqrt(3.0 * k * k + 4.0 / (beta * hbar * hbar))
    root_minus = complex(-half_r, -0.5 * k)
    root_plus = complex(half_r, -0.5 * k)

    b3 = beta * hbar**3

    def residual(lam: complex) -> float:
        return abs(b3 * lam**3 - hbar * lam + 1j * p)

    roots = (root0, root_minus, root_plus)
    return CubicRoots(roots=roots, residuals=tuple(residual(r) for r in roots))


def momentum_mode(p: float, params: ModelParams) -> MomentumEigenfunction:
    """Amplitude sqrt((1 - 3 beta p^2)/(2 pi hbar)) and phase wavenumber k_pert.

    Only defined while 1 - 3 beta p^2 > 0; beyond that the first-order
    amplitude loses meaning and OutsideFirstOrderDomain is raised.
    """
    hbar, beta = params.hbar, params.beta
    weight = 1.0 - 3.0 * beta * p * p
    if weight <= 0.0:
        raise OutsideFirstOrderDomain(
            f"1 - 3*beta*p^2 = {weight!r} <= 0 at p={p!r}, beta={beta!r}; "
            "reduce beta or p"
        )
    amplitude = math.sqrt(weight / (2.0 * math.pi * hbar))
    k_pert = (p - beta * p**3) / hbar
    return MomentumEigenfunction(p=p, amplitude=amplitude, wavenumber=k_pert)


def eigenfunction_value(p: float, x, params: ModelParams):
    """First-order eigenfunction u_p at position(s) x.

    Accepts a scalar or array x; |u_p| is x-independent.  Raises
    OutsideFirstOrderDomain when 1 - 3 beta p^2 <= 0.
    """
    mode = momentum_mode(p, params)
    x_arr = np.asarray(x, dtype=float)
    out = mode.amplitude * np.exp(1j * mode.wavenumber * x_arr)
    if x_arr.ndim == 0:
        return complex(out)
    return out
