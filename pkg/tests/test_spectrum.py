import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kratzer_dirac.errors import MultipleRoots, NegativeRadicand, NoBoundState, ValidationError
from kratzer_dirac.model import Component, PotentialParams, Regime
from kratzer_dirac.spectrum import (
    AbsentLevel,
    RootSolveConfig,
    exponent_p,
    level_coulomb,
    level_nonrel,
    level_scalar_only,
    solve_level,
    solve_level_kratzer,
    spectrum_range,
    xi,
)

# energies of the first levels for the Fig. 1(a) caption set, confirmed by the Sturm oracle
FIG1A_UPPER = [-0.9070497820652804, -0.6970654414197459, -0.4387329984722225, -0.18818333573375437]


def test_xi_examples():
    p = PotentialParams(1, 5, 1, 0.1, 0.01)
    assert xi(p, "upper", 0.5) == pytest.approx(0.185, abs=1e-15)
    assert xi(PotentialParams(1, 5, 1, 1.0, 0), "lower", 0.3) == 0.0
    assert xi(PotentialParams(1, 5, 1, 0.3, 0), "upper", -0.2) == pytest.approx(0.39, abs=1e-15)


@pytest.mark.parametrize("value,expected", [(0.0, 1.0), (2.0, 2.0), (-0.25, 0.5)])
def test_exponent_p_examples(value, expected):
    assert exponent_p(value) == expected


def test_exponent_p_negative_radicand():
    with pytest.raises(NegativeRadicand):
        exponent_p(-0.3)


@given(st.floats(-0.25, 1e4))
def test_exponent_p_solves_indicial_equation(value):
    p = exponent_p(value)
    assert p >= 0.5
    assert abs(p * (p - 1) - value) <= 1e-13 * max(1.0, abs(value))


def test_kratzer_caption_ground_state(fig1a):
    level = solve_level_kratzer(fig1a, Component.UPPER, 0)
    assert level.E == pytest.approx(-0.9071, abs=5e-4)
    assert level.alpha == pytest.approx(2 * level.p - 1, abs=1e-15)
    assert level.kappa == pytest.approx(math.sqrt(1 - level.E**2), rel=1e-14)
    assert level.diagnostics["bisection_iterations"] > 0


def test_kratzer_caption_levels_regression(fig1a):
    energies = [solve_level_kratzer(fig1a, "upper", n).E for n in range(4)]
    np.testing.assert_allclose(energies, FIG1A_UPPER, rtol=0, atol=1e-11)
    assert all(e1 < e2 for e1, e2 in zip(energies, energies[1:]))


def test_kratzer_laguerre_index_identity(fig1a):
    for n in range(5):
        level = solve_level_kratzer(fig1a, "upper", n)
        explicit = math.sqrt((2 * fig1a.b + 1) ** 2 + 4 * fig1a.D * (level.E + fig1a.M) * fig1a.q * fig1a.a**2)
        assert level.alpha == pytest.approx(explicit, abs=1e-12)


def test_multiple_roots_are_reported(monkeypatch):
    # force two sign changes by faking the residual's ingredients
    import kratzer_dirac.spectrum as sp

    def wiggly_xi(params, component, E):
        return 60.0 * (1.0 + math.sin(12.0 * E))

    monkeypatch.setattr(sp, "xi", wiggly_xi)
    with pytest.raises(MultipleRoots) as info:
        sp.solve_level_kratzer(PotentialParams(1, 5, 1, 0.1, 0.01), "upper", 0)
    assert len(info.value.candidates) >= 2


@pytest.mark.parametrize("component,b,n,expected", [
    ("upper", 0.0, 0, 0.0),
    ("upper", 0.1, 0, (1.21 - 25) / (1.21 + 25)),
    ("lower", 0.6, 0, (0.36 - 1) / (0.36 + 1)),
])
def test_coulomb_examples(component, b, n, expected):
    D = 5.0 if b == 0.1 else 1.0
    level = level_coulomb(PotentialParams(1, D, 1, b, 0), component, n)
    assert level.E == pytest.approx(expected, abs=1e-15)
    p = 1 + b if component == "upper" else b
    assert level.p == p and level.alpha == pytest.approx(2 * p - 1)


def test_coulomb_levels_tend_to_M():
    p = PotentialParams(2.0, 1.0, 1.0, 0.4, 0)
    energies = [level_coulomb(p, "upper", n).E for n in range(0, 400, 7)]
    assert all(a < b < 2.0 for a, b in zip(energies, energies[1:]))
    assert 2.0 - energies[-1] < 1e-4


def test_scalar_only_examples():
    p = PotentialParams(1, 5, 1, 0.0, 0)
    assert level_scalar_only(p, 9).E == 0.0
    assert level_scalar_only(p, 10).E == pytest.approx(math.sqrt(1 - 100 / 121), rel=1e-15)
    assert level_scalar_only(p, 10, sign=-1).E == pytest.approx(-math.sqrt(1 - 100 / 121), rel=1e-15)
    with pytest.raises(NoBoundState):
        level_scalar_only(p, 8)
    with pytest.raises(ValidationError):
        level_scalar_only(p, 10, sign=0)


def test_scalar_kappa_matches_energy():
    p = PotentialParams(1.5, 0.4, 1.0, 0.3, 0)
    for n in range(4):
        lv = level_scalar_only(p, n)
        assert lv.kappa == pytest.approx(math.sqrt(p.M**2 - lv.E**2), rel=1e-13)


@pytest.mark.parametrize("D,b,q,n,expected", [(0.1, 0.0, 0.0, 0, 0.98), (5.0, 0.1, 0.01, 0, -35.017008715956)])
def test_nonrel_examples(D, b, q, n, expected):
    assert level_nonrel(PotentialParams(1, D, 1, b, q), n).E == pytest.approx(expected, abs=1e-9)


def test_nonrel_hydrogen_like():
    p = PotentialParams(1.3, 0.2, 0.7, 0.0, 0.0)
    for n in range(5):
        expected = p.M * (1 - 2 * (p.D * p.a) ** 2 / (n + 1) ** 2)
        assert level_nonrel(p, n).E == pytest.approx(expected, rel=1e-14)


def test_spectrum_range_marks_absent_scalar_levels():
    levels = spectrum_range(PotentialParams(1, 5, 1, 0.0, 0), "scalar", "upper", 11)
    absent = [lv.n for lv in levels if isinstance(lv, AbsentLevel)]
    assert absent == list(range(9))
    assert levels[9].E == 0.0 and levels[10].E > 0


def test_spectrum_range_caption_levels(fig1a):
    levels = spectrum_range(fig1a, "kratzer", "upper", 2)
    energies = [lv.E for lv in levels]
    assert all(-1 < a < b < 1 for a, b in zip(energies, energies[1:]))


def test_bad_quantum_numbers(fig1a):
    for n in (-1, 1.5, True):
        with pytest.raises(ValidationError):
            solve_level(fig1a, "kratzer", "upper", n)


def test_root_config_validation():
    with pytest.raises(ValidationError):
        RootSolveConfig(scan_points=8)
    with pytest.raises(ValidationError):
        RootSolveConfig(tol=0)


def test_solver_is_deterministic(fig1a):
    a = solve_level(fig1a, "kratzer", "lower", 3)
    b = solve_level(fig1a, "kratzer", "lower", 3)
    assert a.E == b.E and a == b


params_strategy = st.builds(
    PotentialParams,
    M=st.floats(0.3, 5.0), D=st.floats(0.05, 10.0), a=st.floats(0.05, 5.0),
    b=st.floats(0.0, 3.0), q=st.floats(0.0, 1.0),
)


@settings(max_examples=40, deadline=None)
@given(params_strategy, st.integers(0, 5))
def test_b_shift_degeneracy_property(params, n):
    upper = solve_level_kratzer(params, "upper", n)
    lower = solve_level_kratzer(params.replace(b=params.b + 1.0), "lower", n)
    assert abs(upper.E - lower.E) <= 1e-12 * params.M


@settings(max_examples=40, deadline=None)
@given(params_strategy, st.integers(0, 5))
def test_kratzer_levels_increase_and_stay_bound(params, n):
    e0 = solve_level_kratzer(params, "upper", n).E
    e1 = solve_level_kratzer(params, "upper", n + 1).E
    assert -params.M < e0 < e1 < params.M
