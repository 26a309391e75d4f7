"""Eigenfunctions on grids: evaluation, partner component, normalization, checks.

Amplitudes are real.  The coupled first-order equations carry a factor i
between the components; it is dropped here and recorded in the table
metadata as ``phase``.  Densities and norms do not depend on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    EplusMZero,
    GridTouchesOrigin,
    RegimeMismatch,
    SingularDenominator,
    TailTooLarge,
    TooFewSamples,
    ValidationError,
    ZeroNorm,
)
from .model import Component, EnergyLevel, PotentialParams, Regime
from .oracle import effective_potential, target_epsilon
from .specfun import QuadratureSpec, integrate_halfline, laguerre, laguerre_derivative, second_derivative

PHASE_TAG = "phi2 stored as real amplitude; physical lower component is i*phi2"
TAIL_LIMIT = 1e-10
DEFAULT_POINTS = 40001


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if not (isinstance(self.points, (int, np.integer)) and self.points >= 3):
            raise ValidationError(f"grid needs an integer point count >= 3, got {self.points!r}")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValidationError("grid bounds must be finite")
        if self.x_min <= 0:
            raise GridTouchesOrigin(f"grid must start at x_min > 0, got {self.x_min!r}")
        if not self.x_max > self.x_min:
            raise ValidationError("grid needs x_max > x_min")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.points)


def default_grid(level: EnergyLevel, points: int = DEFAULT_POINTS,
                 min_factor: float = 1e-6, max_factor: float = 40.0) -> Grid:
    """x in [1e-6/kappa, 40/kappa] with kappa*h close to 1e-3."""
    k = level.kappa
    return Grid(min_factor / k, max_factor / k, points)


def _check_level(level: EnergyLevel, params: PotentialParams):
    if level.params is not None and level.params != params:
        raise RegimeMismatch("level was solved for different parameters")
    if level.regime in (Regime.COULOMB_LIMIT, Regime.SCALAR_ONLY) and params.q != 0:
        raise RegimeMismatch(f"regime {level.regime.value!r} needs q = 0")


def _envelope(level: EnergyLevel, x):
    y = 2.0 * level.kappa * np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        env = np.exp(-0.5 * y + level.p * np.log(y))
    return y, env


def eval_component(level: EnergyLevel, params: PotentialParams, grid) -> np.ndarray:
    """Unnormalized e^{-y/2} y^p L_n^alpha(y), y = 2 kappa x.

    ``grid`` may be a :class:`Grid` or an array of positive abscissae.
    """
    _check_level(level, params)
    x = grid.x if isinstance(grid, Grid) else np.asarray(grid, dtype=float)
    y, env = _envelope(level, x)
    return env * laguerre(level.n, level.alpha, y)


def _component_derivative(level: EnergyLevel, x):
    # d/dx of eval_component, exact:
    # 2 kappa e^{-y/2} y^{p-1} [(p - y/2) L + y L']
    y = 2.0 * level.kappa * x
    with np.errstate(divide="ignore"):
        env = np.exp(-0.5 * y + (level.p - 1.0) * np.log(y))
    L = laguerre(level.n, level.alpha, y)
    dL = laguerre_derivative(level.n, level.alpha, y)
    return 2.0 * level.kappa * env * ((level.p - 0.5 * y) * L + y * dL)


def _partner_denominator(level: EnergyLevel, params: PotentialParams, x, E):
    M = params.M
    if level.regime is Regime.NON_RELATIVISTIC:
        return np.full_like(x, 2.0 * M)
    if E + M == 0:
        raise EplusMZero("E + M = 0: the partner relation is undefined")
    if level.regime is Regime.SCALAR_ONLY:
        denom = E + M + params.sigma(x)   # V_V = 0, so V_S equals sigma
        sign = np.signbit(denom)
        bad = np.flatnonzero((denom == 0) | np.concatenate([sign[1:] != sign[:-1], [False]]))
        if bad.size:
            hits = sorted(set(bad.tolist()) | {i + 1 for i in bad.tolist() if denom[i] != 0 and i + 1 < x.size})
            raise SingularDenominator(
                f"E + M + V_S(x) changes sign on the grid near x = {x[hits[0]]:.6g} "
                f"(indices {hits})", hits)
        return denom
    return np.full_like(x, E + M)


def partner_component(level: EnergyLevel, phi1_samples, params: PotentialParams, grid: Grid,
                      E: Optional[float] = None) -> np.ndarray:
    """Partner amplitude from the first-order relation, derivative by finite differences.

    Spin-symmetric regimes: (phi1' - V_P phi1) / (E + M).
    Scalar only: the denominator is E + M + V_S(x).
    Non-relativistic: phi1' / (2M).
    """
    _check_level(level, params)
    if level.component is not Component.UPPER:
        raise ValidationError("partner_component expects an upper-component level")
    phi1 = np.asarray(phi1_samples, dtype=float)
    x = grid.x
    if phi1.shape != x.shape:
        raise ValidationError("phi1 samples do not match the grid")
    E = level.E if E is None else E
    denom = _partner_denominator(level, params, x, E)
    dphi = np.gradient(phi1, grid.h, edge_order=2)
    if level.regime is Regime.NON_RELATIVISTIC:
        return dphi / denom
    return (dphi - params.pseudoscalar(x) * phi1) / denom


def analytic_partner(level: EnergyLevel, params: PotentialParams, x, E: Optional[float] = None):
    """Partner amplitude with the exact derivative of the Laguerre form."""
    x = np.asarray(x, dtype=float)
    E = level.E if E is None else E
    denom = _partner_denominator(level, params, x, E)
    dphi = _component_derivative(level, x)
    if level.regime is Regime.NON_RELATIVISTIC:
        return dphi / denom
    _, phi = _envelope(level, x)
    phi = phi * laguerre(level.n, level.alpha, 2.0 * level.kappa * x)
    return (dphi - params.pseudoscalar(x) * phi) / denom


def count_nodes(samples) -> int:
    """Sign changes between consecutive samples, ignoring |v| < 1e-12 max|v|."""
    v = np.asarray(samples, dtype=float)
    if v.size < 2:
        return 0
    peak = np.max(np.abs(v))
    if peak == 0 or not math.isfinite(peak):
        return 0
    kept = v[np.abs(v) >= 1e-12 * peak]
    return int(np.count_nonzero(np.signbit(kept[1:]) != np.signbit(kept[:-1])))


class Residual(float):
    """A float with a ``degenerate`` flag (set when the samples vanish)."""

    degenerate: bool = False

    def __new__(cls, value, degenerate=False):
        obj = super().__new__(cls, value)
        obj.degenerate = degenerate
        return obj


def ode_residual(level: EnergyLevel, samples, params: PotentialParams, grid: Grid, *,
                 component=None, E: Optional[float] = None, buffer: int = 5) -> Residual:
    """Relative L2 residual of -phi'' + U phi - eps phi on the grid interior.

    ``buffer`` points are dropped at each end.  ``component`` selects which
    second-order equation is checked (default: the level's own).
    """
    phi = np.asarray(samples, dtype=float)
    if phi.shape[0] < 2 * buffer + 3:
        raise TooFewSamples(f"need at least {2 * buffer + 3} samples for the residual")
    component = level.component if component is None else Component.parse(component)
    E = level.E if E is None else E
    x = grid.x
    eps = target_epsilon(level, params.M, E)
    U = effective_potential(params, level.regime, component, E, x)
    d2 = second_derivative(phi, grid.h)
    inner = slice(buffer - 1, phi.shape[0] - 2 - (buffer - 1))
    core = slice(buffer, phi.shape[0] - buffer)
    r = -d2[inner] + (U[core] - eps) * phi[core]
    scale = np.linalg.norm(eps * phi[core])
    if scale == 0:
        return Residual(0.0, degenerate=True)
    return Residual(float(np.linalg.norm(r) / scale))


def _simpson(f, h):
    n = f.shape[0] - 1
    if n < 2:
        return float(0.5 * h * (f[0] + f[-1])) if n == 1 else 0.0
    if n % 2:
        # odd interval count: Simpson 3/8 on the last three intervals
        head = _simpson(f[:-3], h) if n > 3 else 0.0
        return head + 3.0 * h / 8.0 * float(f[-4] + 3 * f[-3] + 3 * f[-2] + f[-1])
    return float(h / 3.0 * (f[0] + f[-1] + 4.0 * f[1:-1:2].sum() + 2.0 * f[2:-1:2].sum()))


def _grid_integral(density, grid: Grid):
    """Grid Simpson, a power-law piece on (0, x_min) and an exponential tail bound."""
    x, h = grid.x, grid.h
    body = _simpson(density, h)
    head = 0.0
    if density[0] > 0 and density[1] > 0:
        s = math.log(density[1] / density[0]) / math.log(x[1] / x[0])
        head = density[0] * x[0] / (s + 1.0) if s > -1 else density[0] * x[0]
    tail = 0.0
    if density[-1] > 0:
        rate = math.log(density[-2] / density[-1]) / h if density[-2] > 0 else 0.0
        tail = density[-1] / rate if rate > 0 else math.inf
    return body + head + tail, tail


@dataclass(frozen=True)
class WavefunctionTable:
    grid: Grid
    phi1: np.ndarray
    phi2: np.ndarray
    density: np.ndarray
    norm_constant: float
    level: Optional[EnergyLevel] = None
    metadata: dict = field(default_factory=dict, compare=False)


def normalize(phi1_samples, phi2_samples, grid: Grid, *, level: Optional[EnergyLevel] = None,
              density: Optional[Callable] = None, spec: QuadratureSpec = QuadratureSpec(rel_tol=1e-12),
              metadata: Optional[dict] = None):
    """Scale both components so the density integrates to one on the half line.

    Without ``density`` the integral comes from the samples: composite
    Simpson on the grid, a power-law piece between 0 and x_min and an
    exponential tail bound beyond x_max.  With ``density`` (a vectorized
    callable for the unnormalized continuous density) the half-line
    integral is computed adaptively and the part beyond x_max is the tail.
    """
    phi1 = np.asarray(phi1_samples, dtype=float)
    phi2 = np.asarray(phi2_samples, dtype=float)
    if phi1.shape != grid.x.shape or phi2.shape != grid.x.shape:
        raise ValidationError("sample arrays do not match the grid")
    rho = phi1 * phi1 + phi2 * phi2
    if density is None:
        total, tail = _grid_integral(rho, grid)
        method = "grid-simpson+power-law-head+exponential-tail"
    else:
        total, info = integrate_halfline(density, 0.0, math.inf, spec, full_output=True, vectorized=True)
        tail = 0.0
        if info.truncation_point > grid.x_max:
            tail = integrate_halfline(density, grid.x_max, info.truncation_point, spec, vectorized=True)
        method = "adaptive-halfline-quadrature"
    if math.isinf(tail) or (math.isfinite(total) and total > 0 and not tail <= TAIL_LIMIT * total):
        raise TailTooLarge(
            f"density beyond x_max = {grid.x_max:.6g} carries {tail / total if math.isfinite(tail) else math.inf:.3e} of the norm "
            f"(limit {TAIL_LIMIT:g}); extend the grid")
    if not (math.isfinite(total) and total > 0):
        raise ZeroNorm(f"density integral is {total!r}; cannot normalize")
    N = 1.0 / math.sqrt(total)
    meta = dict(metadata or {})
    meta.update(norm_method=meta.get("norm_method", method), tail_estimate=tail / total, phase=PHASE_TAG)
    p1, p2 = N * phi1, N * phi2
    return N, WavefunctionTable(grid, p1, p2, p1 * p1 + p2 * p2, N, level, meta)


def build_table(level: EnergyLevel, params: PotentialParams, grid: Optional[Grid] = None) -> WavefunctionTable:
    """Normalized spinor table for a solved level.

    Upper levels carry the analytic phi1 and the partner phi2 from the
    first-order relation at the same energy (exact derivative).  Lower
    levels of the spin-symmetric regimes carry their own analytic phi2
    and a zero phi1 column, flagged as ``lower-component-only``.
    """
    _check_level(level, params)
    grid = grid or default_grid(level)
    x = grid.x
    comp = eval_component(level, params, x)
    if level.component is Component.UPPER:
        phi1 = comp
        phi2 = analytic_partner(level, params, x)
        content = "spinor: phi1 analytic, phi2 from the first-order relation"

        def rho(t):
            a = eval_component(level, params, t)
            b = analytic_partner(level, params, t)
            return a * a + b * b
    else:
        phi1 = np.zeros_like(comp)
        phi2 = comp
        content = "lower-component-only"

        def rho(t):
            b = eval_component(level, params, t)
            return b * b

    N, table = normalize(phi1, phi2, grid, level=level, density=rho)
    own = table.phi1 if level.component is Component.UPPER else table.phi2
    residual = ode_residual(level, own, params, grid)
    table.metadata.update(
        content=content,
        nodes=count_nodes(own),
        ode_residual=float(residual),
        ode_residual_degenerate=residual.degenerate,
    )
    return table
