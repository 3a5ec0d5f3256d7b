import math
from fractions import Fraction

import numpy as np
import pytest

from mlqm import (
    ModelParams,
    SI_LIKE,
    characteristic_roots,
    eigenfunction,
    energy_from_condition,
    energy_level,
    energy_shift,
    energy_terms,
    energy_unperturbed,
    wavenumber_j,
)
from mlqm.errors import (
    InvalidQuantumNumber,
    NonPositiveEnergy,
    NonPositiveInput,
    OutOfDomain,
)

NATURAL = ModelParams()

# Frozen with a 30-digit evaluation of the closed forms (mpmath oracle).
PI2_OVER_2 = 4.934802200544679
SHIFT_1_001 = 0.9740909103400244
E_2_HALF = 799.0119370741982          # 2 pi^2 + 8 pi^4
E_1_ONE = 102.34389323454711          # pi^2/2 + pi^4
E0_3_GENERAL = 5.551652475612764      # 9 pi^2 / 16


def test_ground_state_energy_natural_units():
    assert energy_unperturbed(1, NATURAL) == pytest.approx(PI2_OVER_2, rel=1e-14)


def test_energy_ratio_is_exactly_n_squared():
    assert energy_unperturbed(2, NATURAL) / energy_unperturbed(1, NATURAL) == 4.0


def test_energy_with_general_constants():
    params = ModelParams(hbar=1.0, mass=2.0, box_width=2.0, units=SI_LIKE)
    assert energy_unperturbed(3, params) == pytest.approx(E0_3_GENERAL, rel=1e-14)


@pytest.mark.parametrize("bad_n", [0, -1, 1.5, "2"])
def test_invalid_quantum_numbers_rejected(bad_n):
    with pytest.raises(InvalidQuantumNumber):
        energy_unperturbed(bad_n, NATURAL)


def test_shift_vanishes_without_deformation():
    for n in (1, 5, 17):
        assert energy_shift(n, NATURAL) == 0.0


def test_shift_value_and_scaling():
    params = ModelParams(beta=0.01)
    assert energy_shift(1, params) == pytest.approx(SHIFT_1_001, rel=1e-13)
    assert energy_shift(2, params) / energy_shift(1, params) == 16.0


def test_shift_power_law_is_exactly_quartic():
    # Rational arithmetic of the output ratio; one float rounding of the
    # n^4 product is the only slack a binary significand allows.
    params = ModelParams(beta=0.25)
    base = Fraction(energy_shift(1, params))
    for n in range(2, 21):
        ratio = Fraction(energy_shift(n, params)) / base
        assert abs(ratio - n**4) <= Fraction(n**4) * Fraction(1, 2**50)


def test_energy_level_bundles_terms():
    level = energy_level(3, ModelParams(beta=0.1))
    e0, shift = energy_terms(3, ModelParams(beta=0.1))
    assert level.e0 == e0 and level.shift == shift
    assert level.e_total == e0 + shift  # exact by construction


def test_energy_terms_continuous_extension():
    e0, shift = energy_terms(0.0, ModelParams(beta=1.0))
    assert e0 == 0.0 and shift == 0.0
    with pytest.raises(InvalidQuantumNumber):
        energy_terms(-0.5, NATURAL)


def test_wavenumber_hand_case():
    # E=1, beta=1/2: sqrt(1+8)=3, j = sqrt((3-1)/(2*0.5))/2... = 1 exactly
    assert wavenumber_j(1.0, ModelParams(beta=0.5)) == pytest.approx(1.0, abs=1e-14)


def test_wavenumber_beta_zero_limit_is_exact():
    params = ModelParams(beta=0.0)
    for energy in (0.5, 1.0, 7.3):
        assert wavenumber_j(energy, params) == pytest.approx(
            math.sqrt(2.0 * energy), rel=1e-15)


def test_wavenumber_monotone_in_energy():
    rng = np.random.default_rng(7)
    params = ModelParams(beta=0.3)
    for _ in range(100):
        e1, e2 = sorted(10.0 ** rng.uniform(-3, 3, size=2))
        if e1 == e2:
            continue
        assert wavenumber_j(e1, params) < wavenumber_j(e2, params)


def test_wavenumber_rejects_non_positive_energy():
    with pytest.raises(NonPositiveEnergy):
        wavenumber_j(0.0, NATURAL)
    with pytest.raises(NonPositiveEnergy):
        wavenumber_j(-1.0, ModelParams(beta=0.5))


def test_characteristic_roots_hand_case():
    # quartic becomes k^4 - k^2 - 2 = (k^2 - 2)(k^2 + 1)
    roots = characteristic_roots(1.0, ModelParams(beta=0.5))
    assert roots.k_real == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert roots.k_osc == pytest.approx(1.0, abs=1e-14)


def _quartic_residual(root_sq, energy, params):
    # exact rational substitution oracle; root_sq = r^2 covers +/-r pairs
    s = Fraction(root_sq)
    two_me = 2 * Fraction(params.mass) * Fraction(energy)
    val = 2 * Fraction(params.beta) * Fraction(params.hbar) ** 4 * s * s \
        - Fraction(params.hbar) ** 2 * s - two_me
    return float(abs(val) / two_me)


def test_characteristic_roots_satisfy_quartic():
    rng = np.random.default_rng(11)
    for _ in range(100):
        energy = rng.uniform(0.0, 1000.0)
        beta = rng.uniform(0.0, 1.0)
        params = ModelParams(beta=beta)
        roots = characteristic_roots(energy, params)
        assert roots.k_real >= roots.k_osc
        assert _quartic_residual(roots.k_real**2, energy, params) <= 1e-10
        assert _quartic_residual(-(roots.k_osc**2), energy, params) <= 1e-10


def test_characteristic_roots_small_beta_behaviour():
    # oscillatory root approaches the ordinary box wavenumber, the real
    # root leaves through infinity like 1/sqrt(beta)
    energy = 3.0
    roots = characteristic_roots(energy, ModelParams(beta=1e-10))
    assert roots.k_osc == pytest.approx(math.sqrt(2.0 * energy), rel=1e-8)
    assert roots.k_real > 1e4
    with pytest.raises(NonPositiveInput):
        characteristic_roots(energy, ModelParams(beta=0.0))


def test_energy_from_condition_frozen_values():
    assert energy_from_condition(2, ModelParams(beta=0.5)) == pytest.approx(E_2_HALF, rel=1e-12)
    assert energy_from_condition(1, ModelParams(beta=1.0)) == pytest.approx(E_1_ONE, rel=1e-12)


def test_energy_from_condition_undeformed_limit():
    assert energy_from_condition(1, ModelParams(beta=1e-12)) == pytest.approx(
        PI2_OVER_2, rel=1e-10)


def test_energy_from_condition_requires_deformation():
    with pytest.raises(NonPositiveInput):
        energy_from_condition(1, ModelParams(beta=0.0))


@pytest.mark.parametrize("beta", [1e-6, 0.01, 0.25, 1.0])
def test_exactness_identity(beta):
    # the quantization condition inverts to the closed-form sum with no
    # truncation; root-finding must reproduce it to round-off
    params = ModelParams(beta=beta)
    for n in range(1, 51):
        e0, shift = energy_terms(n, params)
        total = e0 + shift
        assert abs(energy_from_condition(n, params) - total) <= 1e-12 * total


def test_quantization_wavenumber_roundtrip():
    params = ModelParams(beta=0.3)
    a = params.box_width
    for n in (1, 2, 5, 20):
        j = wavenumber_j(energy_from_condition(n, params), params)
        assert j == pytest.approx(n * math.pi / a, rel=1e-12)


def test_quantization_equivalent_to_dirichlet():
    params = ModelParams(beta=0.3)
    a = params.box_width
    for n in (1, 2, 7):
        j = wavenumber_j(energy_from_condition(n, params), params)
        assert math.sin(j * 0.0) == 0.0
        assert abs(math.sin(j * a)) < 1e-10
    # off quantization the wall value is macroscopically nonzero
    e_mid = 0.5 * (energy_from_condition(1, params) + energy_from_condition(2, params))
    assert abs(math.sin(wavenumber_j(e_mid, params) * a)) > 0.1


def test_level_ordering_in_n_and_beta():
    for beta in (0.0, 0.1, 1.0):
        params = ModelParams(beta=beta)
        totals = [sum(energy_terms(n, params)) for n in range(1, 31)]
        assert all(b > a for a, b in zip(totals, totals[1:]))
    for n in (1, 3, 10):
        totals = [sum(energy_terms(n, ModelParams(beta=b))) for b in (0.0, 0.1, 0.5, 1.0)]
        assert all(b > a for a, b in zip(totals, totals[1:]))


def test_eigenfunction_boundary_and_midpoint():
    x = np.array([0.0, 0.5, 1.0])
    sample = eigenfunction(1, NATURAL, x)
    assert sample.psi[0] == 0.0
    assert sample.psi[2] == 0.0
    assert sample.psi[1] == pytest.approx(math.sqrt(2.0), rel=1e-15)


def test_eigenfunction_is_beta_independent():
    x = np.linspace(0.0, 1.0, 57)
    base = eigenfunction(4, ModelParams(beta=0.0), x).psi
    deformed = eigenfunction(4, ModelParams(beta=1.0), x).psi
    assert np.array_equal(base, deformed)


def test_eigenfunction_rejects_positions_outside_box():
    with pytest.raises(OutOfDomain):
        eigenfunction(1, NATURAL, [-0.1, 0.5])
    with pytest.raises(OutOfDomain):
        eigenfunction(1, NATURAL, [0.5, 1.2])


def test_eigenfunction_quadrature_normalization():
    x = np.linspace(0.0, 1.0, 10_000)
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    for n in range(1, 6):
        psi = eigenfunction(n, NATURAL, x).psi
        assert abs(float(trapezoid(psi**2, x)) - 1.0) <= 1e-8
