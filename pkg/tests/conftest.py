import warnings

import pytest

from kratzer_dirac.errors import NoBoundState, RestrictedParameterB, UnsupportedCombination
from kratzer_dirac.figures import caption_parameter_sets
from kratzer_dirac.model import PotentialParams

RELATIVISTIC = ("kratzer", "coulomb", "scalar")
REGIMES = RELATIVISTIC + ("nonrel",)
NOT_DEFINED = (UnsupportedCombination, RestrictedParameterB, NoBoundState)

# filled by test_acceptance, printed at the end of the session
ACCEPTANCE_RESULTS = {}


def regime_params(regime):
    """Caption parameter sets adapted to a regime (q forced to 0 where required)."""
    out = []
    for p in caption_parameter_sets():
        if regime in ("coulomb", "scalar"):
            p = p.replace(q=0.0)
        if p not in out:
            out.append(p)
    return out


def caption_cases(n_max=3):
    """(regime, component, n, params) for every caption set, both components."""
    for regime in REGIMES:
        for params in regime_params(regime):
            for component in ("upper", "lower"):
                for n in range(n_max + 1):
                    yield regime, component, n, params


@pytest.fixture
def fig1a():
    return PotentialParams(M=1.0, D=5.0, a=1.0, b=0.1, q=0.01)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
