"""Bound states of the (1+1)-D Dirac equation with a generalized Kratzer
scalar+vector potential and an attractive Coulomb pseudoscalar term, plus a
finite-difference Sturm oracle that checks every analytical level."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .model import Component, EnergyLevel, PotentialParams, Regime, ValidatedProblem, decay_constant, validate
from .oracle import OracleConfig, VerificationReport, effective_potential, sturm_eigenvalue, verify_level
from .specfun import (
    QuadratureSpec,
    integrate_halfline,
    kummer_polynomial,
    laguerre,
    log_gamma,
    second_derivative,
)
from .spectrum import (
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
from .wavefunction import (
    Grid,
    WavefunctionTable,
    build_table,
    count_nodes,
    default_grid,
    eval_component,
    normalize,
    ode_residual,
    partner_component,
)
