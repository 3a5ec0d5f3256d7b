"""Minimal-length quantum mechanics.

Closed-form and numerical treatment of two canonical problems under a
minimal observable length: the particle in a one-dimensional box with the
deformed kinetic operator, and momentum-space eigenfunctions of the deformed
momentum operator.  Every closed form is paired with an independent
numerical oracle; see ``mlqm.verify`` and the ``mlqm verify`` CLI command.
"""

from . import errors
from .box import (
    CharRoots,
    EnergyLevel,
    WaveSample,
    characteristic_roots,
    eigenfunction,
    energy_from_condition,
    energy_level,
    energy_shift,
    energy_terms,
    energy_unperturbed,
    wavenumber_j,
)
from .fd import (
    BandedOperator,
    FdProblem,
    FdSpectrum,
    assemble_operator,
    convergence_study,
    discrete_eigenvalue,
    laplacian_eigenvalue,
    sampled_mode,
    solve_lowest,
)
from .kernels import active_backend
from .momentum import (
    CubicRoots,
    DispersionSolution,
    MomentumEigenfunction,
    characteristic_cubic_roots,
    dispersion_forward,
    dispersion_solve,
    eigenfunction_value,
    momentum_mode,
    normalization_jacobian,
)
from .params import NATURAL, SI_LIKE, ModelParams, gup_bound, minimal_length, validate_params

__version__ = "0.1.0"

__all__ = [
    "BandedOperator",
    "CharRoots",
    "CubicRoots",
    "DispersionSolution",
    "EnergyLevel",
    "FdProblem",
    "FdSpectrum",
    "ModelParams",
    "MomentumEigenfunction",
    "NATURAL",
    "SI_LIKE",
    "WaveSample",
    "active_backend",
    "assemble_operator",
    "characteristic_cubic_roots",
    "characteristic_roots",
    "convergence_study",
    "discrete_eigenvalue",
    "dispersion_forward",
    "dispersion_solve",
    "eigenfunction",
    "eigenfunction_value",
    "energy_from_condition",
    "energy_level",
    "energy_shift",
    "energy_terms",
    "energy_unperturbed",
    "errors",
    "gup_bound",
    "laplacian_eigenvalue",
    "minimal_length",
    "momentum_mode",
    "normalization_jacobian",
    "sampled_mode",
    "solve_lowest",
    "validate_params",
    "wavenumber_j",
    "__version__",
]
