"""Domain types, parameter validation and the potentials themselves.

Units are natural (hbar = c = 1): ``M`` and ``D`` are energies, ``a`` is an
inverse energy (a length), ``b`` and ``q`` are dimensionless.  Everything is
posed on the half line ``x > 0``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    NonPositiveParameter,
    OutOfBoundRange,
    RegimeParamMismatch,
    RestrictedParameterB,
    UnsupportedCombination,
)


class Regime(enum.Enum):
    """Which solvable case of the model is being treated."""

    SPIN_SYMMETRIC_KRATZER = "kratzer"
    COULOMB_LIMIT = "coulomb"
    SCALAR_ONLY = "scalar"
    NON_RELATIVISTIC = "nonrel"

    @property
    def relativistic(self) -> bool:
        return self is not Regime.NON_RELATIVISTIC

    @classmethod
    def parse(cls, value) -> "Regime":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class Component(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"

    @classmethod
    def parse(cls, value) -> "Component":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class PotentialParams:
    """Physical inputs of the model.

    ``sigma(x)`` is the scalar+vector sum (generalized Kratzer form) and
    ``pseudoscalar(x)`` the attractive Coulomb pseudoscalar term.
    """

    M: float
    D: float
    a: float
    b: float
    q: float = 0.0

    def sigma(self, x):
        x = np.abs(x)
        return -2.0 * self.D * (self.a / x - 0.5 * self.q * self.a**2 / x**2)

    def pseudoscalar(self, x):
        return -self.b / np.abs(x)

    def pseudoscalar_derivative(self, x):
        # d/dx(-b/|x|) on x > 0
        return self.b / np.asarray(x, dtype=float) ** 2

    def replace(self, **changes) -> "PotentialParams":
        values = {k: getattr(self, k) for k in ("M", "D", "a", "b", "q")}
        values.update(changes)
        return PotentialParams(**values)

    def as_dict(self) -> dict:
        return {"M": self.M, "D": self.D, "a": self.a, "b": self.b, "q": self.q}


@dataclass(frozen=True)
class ValidatedProblem:
    params: PotentialParams
    regime: Regime
    component: Component
    strict: bool = True
    warnings: tuple = ()


@dataclass(frozen=True)
class EnergyLevel:
    """A solved bound state.

    ``p`` is the small-x exponent of the eigenfunction, ``alpha`` the upper
    Laguerre index (always ``2p - 1``) and ``kappa`` the decay constant, so
    that the Laguerre argument is ``y = 2 kappa x``.
    """

    n: int
    E: float
    regime: Regime
    component: Component
    p: float
    alpha: float
    kappa: float
    params: Optional[PotentialParams] = None
    sign: int = 1
    diagnostics: dict = field(default_factory=dict, compare=False)

    def with_energy(self, E: float) -> "EnergyLevel":
        """Same level with a shifted energy; used to probe harness sensitivity."""
        return EnergyLevel(
            self.n, E, self.regime, self.component, self.p, self.alpha,
            self.kappa, self.params, self.sign,
            dict(self.diagnostics, energy_override=True),
        )


def validate(params: PotentialParams, regime, component, strict: bool = True) -> ValidatedProblem:
    """Check parameters against the regime and component.

    In permissive mode (``strict=False``) the lower Coulomb component accepts
    ``b <= 1/2``; a warning is attached to the returned problem and also
    issued through :mod:`warnings`.
    """
    regime = Regime.parse(regime)
    component = Component.parse(component)

    for name in ("M", "D", "a"):
        value = getattr(params, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise NonPositiveParameter(f"{name} must be a positive finite number, got {value!r}")
    # b = 0 switches the pseudoscalar term off; it is accepted as a limit
    for name in ("b", "q"):
        value = getattr(params, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
            raise NonPositiveParameter(f"{name} must be >= 0, got {value!r}")

    if regime in (Regime.COULOMB_LIMIT, Regime.SCALAR_ONLY) and params.q != 0:
        raise RegimeParamMismatch(f"regime {regime.value!r} requires q = 0, got q = {params.q!r}")

    if component is Component.LOWER and regime in (Regime.NON_RELATIVISTIC, Regime.SCALAR_ONLY):
        raise UnsupportedCombination(
            f"regime {regime.value!r} is solved for the upper component only; "
            "the lower one follows from the first-order relation"
        )

    notes = []
    if regime is Regime.COULOMB_LIMIT and component is Component.LOWER and params.b <= 0.5:
        if strict or params.b == 0:
            raise RestrictedParameterB(
                f"lower Coulomb component needs b > 1/2 for a non-negative Laguerre index, got b = {params.b!r}"
            )
        notes.append("b <= 1/2: negative Laguerre index 2b-1, exponent p = b is the small root")
        warnings.warn(notes[-1], RuntimeWarning, stacklevel=2)

    return ValidatedProblem(params, regime, component, strict, tuple(notes))


def decay_constant(params: PotentialParams, regime, E: float) -> float:
    """kappa = sqrt(M^2 - E^2), or sqrt(2M(M - E)) in the non-relativistic case."""
    regime = Regime.parse(regime)
    M = params.M
    if regime.relativistic:
        if not abs(E) < M:
            raise OutOfBoundRange(f"need |E| < M for a bound state, got E = {E!r}, M = {M!r}")
        return math.sqrt((M - E) * (M + E))
    if not E < M:
        raise OutOfBoundRange(f"need E < M for a bound state, got E = {E!r}, M = {M!r}")
    return math.sqrt(2.0 * M * (M - E))
