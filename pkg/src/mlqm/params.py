"""Model constants, unit conventions, and the kinematic minimal-length relations.

A minimal observable length enters through two constants: the deformation
parameter ``beta`` of the commutator [x, p] = i*hbar*(1 + beta*p**2), and the
dimensionless ``alpha`` of the uncertainty bound

    dx  >=  hbar/dp + alpha * l_P**2 * dp / hbar,

whose minimum over dp is the minimal length 2*l_P*sqrt(alpha).  beta and
alpha are related in principle but no explicit relation is adopted here, so
they are stored independently.

Two unit conventions are supported:

* ``"natural"`` (default): hbar = m = a = 1 so beta is a pure number, and it
  is restricted to [0, 1] -- beta = 0 is ordinary quantum mechanics, beta = 1
  the extreme deformation.
* ``"si-like"``: beta carries dimension momentum**-2 and is only required to
  be non-negative; no upper bound is checked.

The convention tag only controls the beta range check.  Constants default to
1 so the natural convention holds out of the box; callers who override hbar,
m or a while keeping the "natural" tag are trusted to know what they mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BetaOutOfRange, NonPositiveConstant, NonPositiveInput

NATURAL = "natural"
SI_LIKE = "si-like"

UNIT_CONVENTIONS = (NATURAL, SI_LIKE)


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the model; immutable once validated.

    Attributes:
        hbar: reduced Planck constant (> 0).
        mass: particle mass (> 0).
        box_width: box width a (> 0).
        beta: commutator deformation parameter (>= 0; <= 1 in natural units).
        alpha: uncertainty-bound coefficient (>= 0, dimensionless).
        planck_length: l_P (> 0).
        units: one of "natural" or "si-like".
    """

    hbar: float = 1.0
    mass: float = 1.0
    box_width: float = 1.0
    beta: float = 0.0
    alpha: float = 0.0
    planck_length: float = 1.0
    units: str = NATURAL


def validate_params(raw: ModelParams) -> ModelParams:
    """Check all invariants and return the params unchanged.

    Raises:
        NonPositiveConstant: a constant violates its sign requirement
            (the exception names the offending field).
        BetaOutOfRange: beta > 1 while the natural-units convention is
            active.
        ValueError: unknown units tag.

    Idempotent: validating a validated instance is a no-op.
    """
    for field in ("hbar", "mass", "box_width", "planck_length"):
        value = getattr(raw, field)
        if not value > 0:
            raise NonPositiveConstant(field, value)
    for field in ("beta", "alpha"):
        value = getattr(raw, field)
        if value < 0:
            raise NonPositiveConstant(field, value, requirement=">= 0")
    if raw.units not in UNIT_CONVENTIONS:
        raise ValueError(f"unknown units convention {raw.units!r}; expected one of {UNIT_CONVENTIONS}")
    if raw.units == NATURAL and raw.beta > 1.0:
        raise BetaOutOfRange(f"beta must lie in [0, 1] in natural units, got {raw.beta!r}")
    return raw


def gup_bound(delta_p: float, params: ModelParams) -> float:
    """Minimum admissible position uncertainty at momentum uncertainty delta_p.

    Evaluates hbar/dp + alpha*l_P**2*dp/hbar.  Convex in dp, with minimum
    ``minimal_length(params)``.
    """
    if not delta_p > 0:
        raise NonPositiveInput(f"delta_p must be > 0, got {delta_p!r}")
    return params.hbar / delta_p + params.alpha * params.planck_length**2 * delta_p / params.hbar


def minimal_length(params: ModelParams) -> float:
    """Smallest resolvable position uncertainty, 2*l_P*sqrt(alpha).

    Equals the minimum of ``gup_bound`` over all delta_p > 0; zero when
    alpha = 0 (no minimal length in the ordinary Heisenberg limit).
    """
    if params.alpha < 0:
        raise NonPositiveConstant("alpha", params.alpha, requirement=">= 0")
    return 2.0 * params.planck_length * math.sqrt(params.alpha)
