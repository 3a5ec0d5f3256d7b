"""Closed-form spectrum of the particle in a box with a minimal-length deformation.

The deformed momentum operator P = (hbar/i) d/dx [1 + beta ((hbar/i) d/dx)^2]
turns the box eigenproblem into a fourth-order ODE; substituting exp(r*x)
gives the characteristic quartic

    2*beta*hbar^4 * r^4 - hbar^2 * r^2 - 2*m*E = 0,

whose four exponents are +/-k_real (a sinh/cosh pair) and +/-i*k_osc (an
oscillatory pair).  Dirichlet walls at x = 0 and x = a eliminate everything
but sin(k_osc * x), so quantization reads k_osc * a = n*pi and the spectrum is

    E_n = n^2 pi^2 hbar^2 / (2 m a^2)  +  beta * n^4 pi^4 hbar^4 / (m a^4).

Inverting the quantization condition reproduces that sum with no truncation,
so the root-finding route (``energy_from_condition``) and the closed form
(``energy_unperturbed`` + ``energy_shift``) must agree to round-off; the test
suite pins that identity at 1e-12 relative.

Normalized eigenfunctions are beta-independent to this order:
psi_n(x) = sqrt(2/a) sin(n pi x / a).
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidQuantumNumber,
    NonPositiveEnergy,
    NonPositiveInput,
    OutOfDomain,
    RootBracketFailure,
)
from .params import ModelParams

# Relative half-width at which the energy bisection stops.  The quantization
# condition is strictly increasing in E, so plain bisection is exact enough;
# robustness is preferred over speed at this scale.
_BISECT_RTOL = 1e-14
_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class EnergyLevel:
    """One box level: quantum number, undeformed term, deformation shift."""

    n: int
    e0: float
    shift: float

    @property
    def e_total(self) -> float:
        """Total energy; exactly e0 + shift by construction."""
        return self.e0 + self.shift


@dataclass(frozen=True)
class CharRoots:
    """Characteristic exponents of the fourth-order box equation.

    The four roots are +/-k_real (real pair, growth rate of the sinh/cosh
    branch) and +/-i*k_osc (imaginary pair, the oscillatory branch that
    survives the boundary conditions).  k_real >= k_osc for all E, beta > 0.
    """

    k_real: float
    k_osc: float


@dataclass(frozen=True)
class WaveSample:
    """Normalized eigenfunction sampled on a position grid in [0, a]."""

    x_grid: np.ndarray
    psi: np.ndarray


def _check_level(n) -> int:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise InvalidQuantumNumber(f"quantum number must be an integer >= 1, got {n!r}")
    return int(n)


def energy_terms(n: float, params: ModelParams) -> tuple[float, float]:
    """Undeformed energy and deformation shift at real level index n >= 0.

    The closed forms are polynomials in n, so they extend to continuous n for
    sweep-style curves; physical levels use the integer wrappers below.
    """
    if n < 0:
        raise InvalidQuantumNumber(f"continuous level index must be >= 0, got {n!r}")
    hbar, m, a = params.hbar, params.mass, params.box_width
    n2 = n * n
    e0 = n2 * math.pi**2 * hbar**2 / (2.0 * m * a**2)
    shift = params.beta * (n2 * n2) * math.pi**4 * hbar**4 / (m * a**4)
    return e0, shift


def energy_unperturbed(n: int, params: ModelParams) -> float:
    """Undeformed box energy n^2 pi^2 hbar^2 / (2 m a^2)."""
    return energy_terms(_check_level(n), params)[0]


def energy_shift(n: int, params: ModelParams) -> float:
    """Deformation shift beta n^4 pi^4 hbar^4 / (m a^4); zero iff beta = 0."""
    return energy_terms(_check_level(n), params)[1]


def energy_level(n: int, params: ModelParams) -> EnergyLevel:
    """Both spectrum terms for level n, bundled."""
    e0, shift = energy_terms(_check_level(n), params)
    return EnergyLevel(n=int(n), e0=e0, shift=shift)


def wavenumber_j(energy: float, params: ModelParams) -> float:
    """Oscillatory wavenumber j(E) of the deformed box equation.

    j = (1/2hbar) * sqrt[(1/beta) (sqrt(1 + 16 m E beta) - 1)], evaluated in
    the algebraically equivalent form

        j = (2/hbar) * sqrt(m E / (1 + sqrt(1 + 16 m E beta)))

    which is free of subtractive cancellation for small beta and remains
    exact at beta = 0, where it reduces to the ordinary sqrt(2 m E)/hbar.
    Strictly increasing in E.
    """
    if not energy > 0:
        raise NonPositiveEnergy(f"energy must be > 0, got {energy!r}")
    m = params.mass
    u = 16.0 * m * energy * params.beta
    return 2.0 / params.hbar * math.sqrt(m * energy / (1.0 + math.sqrt(1.0 + u)))


def characteristic_roots(energy: float, params: ModelParams) -> CharRoots:
    """Both positive characteristic wavenumbers at energy E (beta > 0).

    k_real = (1/2hbar) sqrt[(1 + sqrt(1 + 16 m E beta)) / beta] diverges as
    beta -> 0 (the sinh/cosh branch leaves the spectrum), so the undeformed
    limit is not representable here; k_osc coincides with ``wavenumber_j``.
    """
    if not energy > 0:
        raise NonPositiveEnergy(f"energy must be > 0, got {energy!r}")
    if not params.beta > 0:
        raise NonPositiveInput(f"characteristic roots need beta > 0, got {params.beta!r}")
    u = 16.0 * params.mass * energy * params.beta
    k_real = 0.5 / params.hbar * math.sqrt((1.0 + math.sqrt(1.0 + u)) / params.beta)
    return CharRoots(k_real=k_real, k_osc=wavenumber_j(energy, params))


def energy_from_condition(n: int, params: ModelParams) -> float:
    """Level-n energy obtained by root-finding on the quantization condition.

    Solves j(E) = n*pi/a by bisection on [e0, e0 + 2*shift + 1]; j is
    strictly increasing, so the bracket is guaranteed for valid inputs.
    This is the independent route to the spectrum: it never evaluates the
    closed-form sum it is tested against.
    """
    n = _check_level(n)
    if not params.beta > 0:
        raise NonPositiveInput(f"energy_from_condition needs beta > 0, got {params.beta!r}")
    target = n * math.pi / params.box_width
    e0, shift = energy_terms(n, params)
    lo, hi = e0, e0 + 2.0 * shift + 1.0
    g_lo = wavenumber_j(lo, params) - target
    g_hi = wavenumber_j(hi, params) - target
    if g_lo > 0 or g_hi < 0:
        raise RootBracketFailure(
            f"quantization condition not bracketed on [{lo!r}, {hi!r}] for n={n}; "
            "this indicates a numerics bug"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(_BISECT_MAX_ITER):
        if hi - lo <= _BISECT_RTOL * mid:
            break
        if wavenumber_j(mid, params) < target:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
    return mid


def eigenfunction(n: int, params: ModelParams, x_grid) -> WaveSample:
    """Normalized eigenfunction sqrt(2/a) sin(n pi x / a) on the given grid.

    Identical for every beta: the first-order deformation shifts energies but
    leaves the box eigenfunctions unchanged.
    """
    n = _check_level(n)
    a = params.box_width
    x = np.atleast_1d(np.asarray(x_grid, dtype=float))
    if x.size and (x.min() < 0.0 or x.max() > a):
        raise OutOfDomain(f"positions must lie in [0, {a}]")
    psi = math.sqrt(2.0 / a) * np.sin(n * math.pi * x / a)
    # the closed form vanishes identically at the walls; sin(n*pi) evaluated
    # in floats is rounding noise, so pin the wall samples to exact zeros
    psi[x == 0.0] = 0.0
    psi[x == a] = 0.0
    return WaveSample(x_grid=x, psi=psi)
