import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kratzer_dirac.errors import (
    NonPositiveParameter,
    OutOfBoundRange,
    RegimeParamMismatch,
    RestrictedParameterB,
    UnsupportedCombination,
)
from kratzer_dirac.model import Component, PotentialParams, Regime, decay_constant, validate


def test_caption_set_is_valid(fig1a):
    problem = validate(fig1a, Regime.SPIN_SYMMETRIC_KRATZER, Component.UPPER)
    assert problem.params == fig1a
    assert problem.warnings == ()


def test_lower_coulomb_at_half_is_restricted_in_strict_mode():
    with pytest.raises(RestrictedParameterB):
        validate(PotentialParams(1, 1, 1, 0.5, 0), "coulomb", "lower", strict=True)


def test_permissive_mode_warns_instead():
    with pytest.warns(RuntimeWarning):
        problem = validate(PotentialParams(1, 1, 1, 0.3, 0), "coulomb", "lower", strict=False)
    assert problem.warnings


def test_permissive_mode_still_rejects_b_zero_for_lower_coulomb():
    with pytest.raises(RestrictedParameterB):
        validate(PotentialParams(1, 1, 1, 0.0, 0), "coulomb", "lower", strict=False)


def test_q_must_vanish_in_coulomb_and_scalar():
    with pytest.raises(RegimeParamMismatch):
        validate(PotentialParams(1, 1, 1, 1, 0.5), "coulomb", "upper")
    with pytest.raises(RegimeParamMismatch):
        validate(PotentialParams(1, 1, 1, 1, 0.5), "scalar", "upper")


@pytest.mark.parametrize("regime", ["nonrel", "scalar"])
def test_lower_component_unsupported(regime):
    with pytest.raises(UnsupportedCombination):
        validate(PotentialParams(1, 1, 1, 1, 0), regime, "lower")


@pytest.mark.parametrize("field,value", [("M", 0), ("D", -1), ("a", 0.0), ("b", -0.1), ("q", -1e-3), ("M", math.nan)])
def test_bad_parameters(field, value):
    params = PotentialParams(1, 1, 1, 1, 0).replace(**{field: value})
    with pytest.raises(NonPositiveParameter):
        validate(params, "kratzer", "upper")


def test_validate_is_idempotent(fig1a):
    first = validate(fig1a, "kratzer", "lower")
    second = validate(first.params, first.regime, first.component)
    assert first == second


@pytest.mark.parametrize("E,regime,expected", [(0.0, "kratzer", 1.0), (0.6, "coulomb", 0.8), (0.5, "nonrel", 1.0)])
def test_decay_constant_examples(E, regime, expected):
    assert decay_constant(PotentialParams(1, 1, 1, 1), regime, E) == pytest.approx(expected, abs=1e-15)


def test_decay_constant_domain():
    p = PotentialParams(1, 1, 1, 1)
    with pytest.raises(OutOfBoundRange):
        decay_constant(p, "kratzer", 1.0)
    with pytest.raises(OutOfBoundRange):
        decay_constant(p, "kratzer", -1.5)
    with pytest.raises(OutOfBoundRange):
        decay_constant(p, "nonrel", 1.0)
    assert decay_constant(p, "nonrel", -50.0) > 0


@given(st.floats(-0.999, 0.999), st.floats(1e-4, 0.5))
def test_relativistic_decay_constant_decreases_with_abs_energy(E, dE):
    # sqrt(M^2 - E^2) is even in E, so it falls with |E| rather than with E
    p = PotentialParams(1, 1, 1, 1)
    E2 = min(abs(E) + dE, 0.9999)
    if E2 > abs(E):
        assert decay_constant(p, "kratzer", E2) < decay_constant(p, "kratzer", E)


@given(st.floats(-100.0, 0.999), st.floats(1e-4, 0.5))
def test_nonrel_decay_constant_decreases_with_energy(E, dE):
    p = PotentialParams(1, 1, 1, 1)
    E2 = min(E + dE, 0.9999)
    if E2 > E:
        assert decay_constant(p, "nonrel", E2) < decay_constant(p, "nonrel", E)


def test_potentials_on_half_line():
    p = PotentialParams(1, 2, 0.5, 0.3, 1.0)
    x = np.array([0.25, 1.0, 4.0])
    np.testing.assert_allclose(p.sigma(x), -2 * 2 * (0.5 / x - 0.5 * 0.25 / x**2))
    np.testing.assert_allclose(p.pseudoscalar(x), -0.3 / x)
    np.testing.assert_allclose(p.pseudoscalar_derivative(x), 0.3 / x**2)


def test_enum_parsing():
    assert Regime.parse("KRATZER") is Regime.SPIN_SYMMETRIC_KRATZER
    assert Component.parse("lower") is Component.LOWER
    with pytest.raises(ValueError):
        Regime.parse("pseudospin")
