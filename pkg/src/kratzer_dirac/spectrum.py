"""Analytical bound-state energies.

The Coulomb, scalar-only and non-relativistic cases have closed forms.  The
spin-symmetric Kratzer case is implicit in E because the inverse-square
strength xi depends on E; it is solved by scanning for sign changes of

    F(E) = D a sqrt((M + E) / (M - E)) - (n + 1/2 + sqrt(1/4 + xi(E)))

on (-M, M) and bisecting each bracket.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .errors import (
    MultipleRoots,
    NegativeRadicand,
    NoBoundState,
    NoRootFound,
    RegimeMismatch,
    ValidationError,
)
from .model import (
    Component,
    EnergyLevel,
    PotentialParams,
    Regime,
    decay_constant,
    validate,
)


@dataclass(frozen=True)
class RootSolveConfig:
    scan_points: int = 2000
    tol: float = 1e-12   # on E, in units of M
    margin: float = 1e-10  # keeps E inside (-M, M), in units of M

    def __post_init__(self):
        if self.scan_points < 16:
            raise ValidationError("scan_points must be >= 16")
        if not (self.tol > 0 and self.margin > 0):
            raise ValidationError("tolerances must be positive")


@dataclass(frozen=True)
class AbsentLevel:
    """Placeholder for a quantum number with no bound state."""

    n: int
    regime: Regime
    component: Component
    reason: str


def xi(params: PotentialParams, component, E: float) -> float:
    """Inverse-square strength D(E+M)qa^2 + b(b+1) (upper) or b(b-1) (lower)."""
    component = Component.parse(component)
    shift = 1.0 if component is Component.UPPER else -1.0
    return params.D * (E + params.M) * params.q * params.a**2 + params.b * (params.b + shift)


def exponent_p(xi_value: float) -> float:
    """Positive root of p(p - 1) = xi.

    ``xi = -1/4`` gives p = 1/2 and is allowed here; whether that boundary is
    physical is the caller's call.
    """
    radicand = 1.0 + 4.0 * xi_value
    if radicand < 0:
        raise NegativeRadicand(f"1 + 4 xi = {radicand!r} < 0: no real exponent")
    return 0.5 * (1.0 + math.sqrt(radicand))


def _diag(**extra):
    return {k: v for k, v in extra.items() if v is not None}


def solve_level_kratzer(params: PotentialParams, component, n: int,
                        cfg: RootSolveConfig = RootSolveConfig(), strict: bool = True) -> EnergyLevel:
    problem = validate(params, Regime.SPIN_SYMMETRIC_KRATZER, component, strict)
    component = problem.component
    n = _check_n(n)
    M, Da = params.M, params.D * params.a

    def residual(E):
        return Da * math.sqrt((M + E) / (M - E)) - (n + 0.5 + math.sqrt(max(0.25 + xi(params, component, E), 0.0)))

    lo_end = -M + cfg.margin * M
    hi_end = M - cfg.margin * M
    grid = [float(E) for E in np.linspace(lo_end, hi_end, cfg.scan_points)]
    values = [residual(E) for E in grid]
    brackets = [(grid[i], grid[i + 1], values[i], values[i + 1])
                for i in range(len(grid) - 1)
                if values[i] == 0.0 or (values[i] < 0.0) != (values[i + 1] < 0.0)]
    if not brackets:
        raise NoRootFound(
            f"no sign change of the Kratzer residual for n={n} on (-M, M); "
            f"F(-M+)={values[0]:.3e}, F(M-)={values[-1]:.3e}"
        )

    roots = [_bisect(residual, *br, tol=cfg.tol * M) for br in brackets]
    if len(roots) > 1:
        raise MultipleRoots(
            f"{len(roots)} candidate energies for n={n}: {', '.join(f'{r[0]:.12g}' for r in roots)}",
            [r[0] for r in roots],
        )
    E, iterations = roots[0]
    xi_value = xi(params, component, E)
    p = exponent_p(xi_value)
    return EnergyLevel(
        n=n, E=E, regime=Regime.SPIN_SYMMETRIC_KRATZER, component=component,
        p=p, alpha=2.0 * p - 1.0, kappa=decay_constant(params, Regime.SPIN_SYMMETRIC_KRATZER, E),
        params=params,
        diagnostics=_diag(bisection_iterations=iterations, residual=residual(E), xi=xi_value,
                          xi_boundary=True if xi_value == -0.25 else None,
                          warnings="; ".join(problem.warnings) or None),
    )


def _bisect(f, lo, hi, f_lo, f_hi, tol):
    iterations = 0
    if f_lo == 0.0:
        return lo, 0
    if f_hi == 0.0:
        return hi, 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        iterations += 1
        if f_mid == 0.0:
            return mid, iterations
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    # one secant step inside the final bracket
    E = lo - f_lo * (hi - lo) / (f_hi - f_lo)
    if not lo <= E <= hi:
        E = 0.5 * (lo + hi)
    return E, iterations


def level_coulomb(params: PotentialParams, component, n: int, strict: bool = True) -> EnergyLevel:
    """Closed-form Dirac-Coulomb level (q = 0)."""
    problem = validate(params, Regime.COULOMB_LIMIT, component, strict)
    component = problem.component
    n = _check_n(n)
    M, b, Da = params.M, params.b, params.D * params.a
    p = 1.0 + b if component is Component.UPPER else b
    k2 = (n + p) ** 2
    E = M * (k2 - Da**2) / (k2 + Da**2)
    return EnergyLevel(
        n=n, E=E, regime=Regime.COULOMB_LIMIT, component=component,
        p=p, alpha=2.0 * p - 1.0, kappa=decay_constant(params, Regime.COULOMB_LIMIT, E),
        params=params, diagnostics=_diag(warnings="; ".join(problem.warnings) or None),
    )


def level_scalar_only(params: PotentialParams, n: int, sign: int = 1) -> EnergyLevel:
    """E = +/- M sqrt(1 - 4 D^2 a^2 / (n + 1 + b)^2) for V_V = 0, q = 0."""
    validate(params, Regime.SCALAR_ONLY, Component.UPPER)
    n = _check_n(n)
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign!r}")
    M, b = params.M, params.b
    k = n + 1.0 + b
    two_da = 2.0 * params.D * params.a
    if two_da > k:
        raise NoBoundState(f"2Da = {two_da:g} exceeds n + 1 + b = {k:g}: level n={n} absent")
    radicand = 1.0 - (two_da / k) ** 2
    E = sign * M * math.sqrt(radicand) if radicand > 0 else 0.0
    p = 1.0 + b
    # kappa = sqrt(M^2 - E^2) = 2DMa/(n+1+b); written directly so E = 0 stays exact
    kappa = M * two_da / k
    return EnergyLevel(
        n=n, E=E, regime=Regime.SCALAR_ONLY, component=Component.UPPER,
        p=p, alpha=2.0 * p - 1.0, kappa=kappa, params=params, sign=sign,
    )


def level_nonrel(params: PotentialParams, n: int) -> EnergyLevel:
    """Non-relativistic level E = M[1 - 2(2Da / (2n + 1 + sqrt((2b+1)^2 + 8MDqa^2)))^2]."""
    validate(params, Regime.NON_RELATIVISTIC, Component.UPPER)
    n = _check_n(n)
    M, D, a, b, q = params.M, params.D, params.a, params.b, params.q
    index = math.sqrt((2.0 * b + 1.0) ** 2 + 8.0 * M * D * q * a * a)
    E = M * (1.0 - 2.0 * (2.0 * D * a / (2.0 * n + 1.0 + index)) ** 2)
    p = 0.5 * (1.0 + index)
    return EnergyLevel(
        n=n, E=E, regime=Regime.NON_RELATIVISTIC, component=Component.UPPER,
        p=p, alpha=index, kappa=decay_constant(params, Regime.NON_RELATIVISTIC, E), params=params,
    )


def solve_level(params: PotentialParams, regime, component, n: int, *, sign: int = 1,
                strict: bool = True, cfg: RootSolveConfig = RootSolveConfig()) -> EnergyLevel:
    """Dispatch to the solver for ``regime``."""
    regime = Regime.parse(regime)
    component = Component.parse(component)
    if regime is Regime.SPIN_SYMMETRIC_KRATZER:
        return solve_level_kratzer(params, component, n, cfg, strict)
    if regime is Regime.COULOMB_LIMIT:
        return level_coulomb(params, component, n, strict)
    validate(params, regime, component, strict)
    if regime is Regime.SCALAR_ONLY:
        return level_scalar_only(params, n, sign)
    if regime is Regime.NON_RELATIVISTIC:
        return level_nonrel(params, n)
    raise RegimeMismatch(f"unknown regime {regime!r}")


def spectrum_range(params: PotentialParams, regime, component, n_max: int, *, sign: int = 1,
                   strict: bool = True, cfg: RootSolveConfig = RootSolveConfig()
                   ) -> List[Union[EnergyLevel, AbsentLevel]]:
    """Levels n = 0..n_max; missing bound states show up as :class:`AbsentLevel`."""
    regime = Regime.parse(regime)
    component = Component.parse(component)
    if n_max < 0:
        raise ValidationError("n_max must be >= 0")
    out = []
    for n in range(n_max + 1):
        try:
            out.append(solve_level(params, regime, component, n, sign=sign, strict=strict, cfg=cfg))
        except NoBoundState as exc:
            out.append(AbsentLevel(n, regime, component, f"NoBoundState: {exc}"))
    return out


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValidationError(f"n must be a non-negative integer, got {n!r}")
    return int(n)
