import math

import numpy as np
import pytest

from mlqm import ModelParams, SI_LIKE, gup_bound, minimal_length, validate_params
from mlqm.errors import BetaOutOfRange, NonPositiveConstant, NonPositiveInput


def test_validate_accepts_natural_defaults():
    params = ModelParams(beta=0.5)
    assert validate_params(params) is params


def test_validate_rejects_beta_above_one_in_natural_units():
    with pytest.raises(BetaOutOfRange):
        validate_params(ModelParams(beta=1.5))


def test_si_like_units_skip_beta_upper_bound():
    params = ModelParams(beta=1.5, units=SI_LIKE)
    assert validate_params(params) is params


@pytest.mark.parametrize("field", ["hbar", "mass", "box_width", "planck_length"])
def test_validate_rejects_non_positive_constants(field):
    with pytest.raises(NonPositiveConstant) as excinfo:
        validate_params(ModelParams(**{field: 0.0}))
    assert excinfo.value.field == field


@pytest.mark.parametrize("field", ["beta", "alpha"])
def test_validate_rejects_negative_coefficients(field):
    with pytest.raises(NonPositiveConstant) as excinfo:
        validate_params(ModelParams(**{field: -0.1}))
    assert excinfo.value.field == field


def test_validate_rejects_unknown_units():
    with pytest.raises(ValueError):
        validate_params(ModelParams(units="cgs"))


def test_validate_is_idempotent():
    params = validate_params(ModelParams(beta=0.25, alpha=2.0))
    assert validate_params(params) is params


def test_gup_bound_unit_case():
    params = ModelParams(alpha=1.0)
    assert gup_bound(1.0, params) == pytest.approx(2.0, rel=1e-15)


def test_gup_bound_heisenberg_limit():
    assert gup_bound(1.0, ModelParams(alpha=0.0)) == 1.0


def test_gup_bound_at_delta_p_two():
    assert gup_bound(2.0, ModelParams(alpha=1.0)) == pytest.approx(2.5, rel=1e-15)


def test_gup_bound_rejects_non_positive_delta_p():
    with pytest.raises(NonPositiveInput):
        gup_bound(0.0, ModelParams())
    with pytest.raises(NonPositiveInput):
        gup_bound(-1.0, ModelParams())


def test_minimal_length_values():
    assert minimal_length(ModelParams(alpha=1.0)) == pytest.approx(2.0, rel=1e-15)
    assert minimal_length(ModelParams(alpha=0.0)) == 0.0
    assert minimal_length(ModelParams(alpha=4.0)) == pytest.approx(4.0, rel=1e-15)


def _golden_section_min(f, lo, hi, iters=200):
    """Independent minimization oracle for the uncertainty bound."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return f(0.5 * (a + b))


@pytest.mark.parametrize("alpha", [0.5, 1.0, 4.0, 10.0])
def test_minimal_length_matches_minimized_bound(alpha):
    params = ModelParams(alpha=alpha)
    found = _golden_section_min(lambda dp: gup_bound(dp, params), 1e-6, 1e6)
    assert abs(found - minimal_length(params)) <= 1e-10 * minimal_length(params)


def test_gup_bound_is_convex_in_delta_p():
    rng = np.random.default_rng(42)
    params = ModelParams(alpha=2.0, planck_length=0.5)
    for _ in range(200):
        dp1, dp2 = sorted(10.0 ** rng.uniform(-3, 3, size=2))
        mid = 0.5 * (dp1 + dp2)
        chord = 0.5 * (gup_bound(dp1, params) + gup_bound(dp2, params))
        assert gup_bound(mid, params) <= chord * (1.0 + 1e-12)
