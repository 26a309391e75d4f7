"""Independent numerical check of the analytical levels.

For a solved level E* the Schrodinger-like operator ``-d^2/dx^2 + U(x; E*)``
is discretized on the half line and its n-th eigenvalue is located by
Sturm-sequence bisection.  The level is consistent when that eigenvalue
equals ``E*^2 - M^2`` (or ``2M(E* - M)`` in the non-relativistic case).

The inverse-square part of U makes eigenfunctions behave like ``x**p`` at
the origin with non-integer p, which spoils the second-order accuracy of a
plain uniform grid.  The operator is therefore discretized in the stretched
coordinate ``x = s**m`` after the Liouville change ``phi = s**((m-1)/2) w``:

    -w'' + [m^2 s^(2m-2) U(s^m) + (m^2 - 1) / (4 s^2)] w = eps * m^2 s^(2m-2) w

which is still a symmetric tridiagonal pencil with a positive diagonal
weight, so Sylvester's inertia count applies unchanged.  ``m`` is picked
from the local inverse-square strength of the sampled potential.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numba
import numpy as np

from .errors import BisectionStall, GridTouchesOrigin, IndefiniteCount, ValidationError
from .model import Component, EnergyLevel, PotentialParams, Regime
from .spectrum import solve_level

MAX_STRETCH = 16


@dataclass(frozen=True)
class OracleConfig:
    points: int = 32768
    domain_factor: float = 40.0    # x_max = domain_factor / kappa
    x_min_factor: float = 0.0      # Dirichlet wall at x_min = x_min_factor / kappa
    tol: float = 1e-12             # eigenvalue bisection tolerance, units of kappa^2
    richardson: bool = True
    stretch: Optional[int] = None  # None: choose from the potential
    rel_tol: float = 1e-4          # pass threshold on the relative error of eps

    def __post_init__(self):
        if self.points < 256:
            raise ValidationError("oracle needs at least 256 points")
        if self.domain_factor < 10:
            raise ValidationError("domain_factor must be >= 10")
        if self.x_min_factor < 0 or self.x_min_factor * 10 >= self.domain_factor:
            raise ValidationError("x_min_factor must lie in [0, domain_factor / 10)")
        if self.stretch is not None and not 1 <= self.stretch <= MAX_STRETCH:
            raise ValidationError(f"stretch must be in [1, {MAX_STRETCH}]")


@dataclass
class VerificationReport:
    level: EnergyLevel
    epsilon_analytic: float
    epsilon_oracle: float
    abs_error: float
    rel_error: float
    energy_error: float
    nodes: int
    passed: bool
    rel_tol: float
    details: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        lvl = self.level
        return {
            "regime": lvl.regime.value,
            "component": lvl.component.value,
            "n": lvl.n,
            "E": lvl.E,
            "epsilon_analytic": self.epsilon_analytic,
            "epsilon_oracle": self.epsilon_oracle,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "energy_error": self.energy_error,
            "nodes": self.nodes,
            "passed": self.passed,
            "rel_tol": self.rel_tol,
            "stretch": self.details.get("stretch"),
            "points": self.details.get("points"),
            "boundary": self.details.get("boundary"),
        }


def effective_potential(params: PotentialParams, regime, component, E_fixed: float, x):
    """The potential of the second-order equation at frozen energy ``E_fixed``.

    Relativistic (spin symmetry):  (E + M) Sigma + V_P^2 +/- dV_P/dx
    Scalar only (V_V = 0):          2M V_S + V_P^2 + dV_P/dx, with V_S = Sigma
    Non-relativistic:               2M Sigma + V_P^2 + dV_P/dx
    """
    regime = Regime.parse(regime)
    component = Component.parse(component)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise GridTouchesOrigin("the effective potential is singular at x = 0; sample on x > 0")
    sigma = params.sigma(x)
    vp = params.pseudoscalar(x)
    dvp = params.pseudoscalar_derivative(x)
    if regime in (Regime.SPIN_SYMMETRIC_KRATZER, Regime.COULOMB_LIMIT):
        sign = 1.0 if component is Component.UPPER else -1.0
        return (E_fixed + params.M) * sigma + vp**2 + sign * dvp
    # scalar-only and non-relativistic brackets coincide in form
    return 2.0 * params.M * sigma + vp**2 + dvp


def target_epsilon(level: EnergyLevel, M: float, E: Optional[float] = None) -> float:
    E = level.E if E is None else E
    if level.regime.relativistic:
        return (E - M) * (E + M)
    return 2.0 * M * (E - M)


# -- Sturm sequence ----------------------------------------------------------

@numba.njit(cache=True)
def _sturm_count(diag, weight, off2, shift):
    # Number of negative pivots of (A - shift W), A = tridiag(-off, diag, -off),
    # off2 = off**2.  Returns -1 on an exactly zero pivot.
    count = 0
    pivot = 1.0
    for i in range(diag.shape[0]):
        if i == 0:
            pivot = diag[0] - shift * weight[0]
        else:
            pivot = diag[i] - shift * weight[i] - off2 / pivot
        if pivot == 0.0:
            return -1
        if pivot < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _tridiag_solve(diag, weight, off, shift, rhs):
    n = diag.shape[0]
    c = np.empty(n)
    d = np.empty(n)
    b0 = diag[0] - shift * weight[0]
    c[0] = -off / b0
    d[0] = rhs[0] / b0
    for i in range(1, n):
        denom = diag[i] - shift * weight[i] + off * c[i - 1]
        c[i] = -off / denom
        d[i] = (rhs[i] + off * d[i - 1]) / denom
    out = np.empty(n)
    out[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = d[i] - c[i] * out[i + 1]
    return out


def sturm_count(diag, weight, off2, shift, retries=8):
    """Eigenvalues of the pencil strictly below ``shift``, retrying on pivot breakdown."""
    s = float(shift)
    for _ in range(retries):
        c = _sturm_count(diag, weight, off2, s)
        if c >= 0:
            return c
        s = np.nextafter(s, math.inf) + 4 * math.ulp(s)
    raise IndefiniteCount(f"zero pivot in Sturm count near shift {shift!r} after {retries} retries")


def _bisect_eigenvalue(diag, weight, off2, n, tol, scale, max_iter=400):
    lo, hi = -scale, scale
    c_lo = sturm_count(diag, weight, off2, lo)
    while c_lo > n:
        hi, lo = lo, lo * 4.0
        c_lo = sturm_count(diag, weight, off2, lo)
    c_hi = sturm_count(diag, weight, off2, hi)
    while c_hi <= n:
        lo, c_lo, hi = hi, c_hi, hi * 4.0 if hi > 0 else -hi
        c_hi = sturm_count(diag, weight, off2, hi)
        if hi > 1e300:
            raise BisectionStall("could not bracket the requested eigenvalue")

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or iterations >= max_iter:
            raise BisectionStall(f"bisection stalled at width {hi - lo:.3e} (tol {tol:.3e})")
        c_mid = sturm_count(diag, weight, off2, mid)
        if not c_lo <= c_mid <= c_hi:
            raise IndefiniteCount("Sturm count is not monotone in the shift")
        if c_mid > n:
            hi, c_hi = mid, c_mid
        else:
            lo, c_lo = mid, c_mid
        iterations += 1
    return 0.5 * (lo + hi)


def sturm_eigenvalue(U_samples, grid, n, tol=1e-12, weight=None):
    """n-th eigenvalue of ``-d^2/dx^2 + U`` (optionally ``= eps * weight``).

    ``grid`` is uniform and includes both endpoints, where Dirichlet
    conditions hold; ``U_samples`` (and ``weight``) are given on the same
    points and only the interior values are used.
    """
    grid = np.asarray(grid, dtype=float)
    U = np.asarray(U_samples, dtype=float)
    if grid.shape != U.shape or grid.shape[0] < 3:
        raise ValidationError("U_samples and grid must have the same length >= 3")
    h = (grid[-1] - grid[0]) / (grid.shape[0] - 1)
    if not np.allclose(np.diff(grid), h, rtol=1e-8, atol=0.0):
        raise ValidationError("sturm_eigenvalue needs a uniform grid")
    w = np.ones_like(U) if weight is None else np.asarray(weight, dtype=float)
    diag = np.ascontiguousarray(2.0 / h**2 + U[1:-1])
    wi = np.ascontiguousarray(w[1:-1])
    scale = max(1.0, 1.0 / (grid[-1] - grid[0]) ** 2)
    return _bisect_eigenvalue(diag, wi, 1.0 / h**4, int(n), tol, scale)


# -- stretched discretization -------------------------------------------------

def inverse_square_strength(potential, x_probe):
    """Coefficient c of c/x^2 in U near the origin, from two probe samples.

    Assumes U = c/x^2 - g/x + O(1) near 0.
    """
    x1, x2 = x_probe, 2.0 * x_probe
    u1, u2 = potential(np.array([x1, x2]))
    return (u1 * x1 * x1 * x2 - u2 * x2 * x2 * x1) / (x2 - x1)


def choose_stretch(c):
    """Smallest m >= 2 with m(2p - 1) >= 2, p the regular Frobenius exponent."""
    root = 0.25 + c
    if root <= 0:
        return MAX_STRETCH
    order = 2.0 * math.sqrt(root)   # = 2p - 1
    return int(min(MAX_STRETCH, max(2, math.ceil(2.0 / order - 1e-9))))


def stretched_eigenvalue(potential, x_min, x_max, intervals, m, n, tol):
    """n-th eigenvalue of -d^2/dx^2 + U on [x_min, x_max] via x = s**m."""
    s_lo = x_min ** (1.0 / m)
    s_hi = x_max ** (1.0 / m)
    s = np.linspace(s_lo, s_hi, intervals + 1)
    h = (s_hi - s_lo) / intervals
    si = s[1:-1]
    x = si**m
    jac = m * m * si ** (2 * m - 2)
    diag = 2.0 / h**2 + jac * potential(x) + (m * m - 1) / (4.0 * si * si)
    diag = np.ascontiguousarray(diag)
    jac = np.ascontiguousarray(jac)
    scale = 1.0 / x_max**2
    eps = _bisect_eigenvalue(diag, jac, 1.0 / h**4, n, tol, scale)
    return eps, (diag, jac, h, si)


def oracle_eigenvector(diag, weight, h, eps, scale, iterations=3):
    """Inverse iteration for the eigenvector nearest ``eps``."""
    off = 1.0 / h**2
    shift = eps - 1e-9 * scale
    v = np.ones(diag.shape[0])
    for _ in range(iterations):
        v = _tridiag_solve(diag, weight, off, shift, weight * v)
        v /= np.max(np.abs(v))
    return v


def verify_level(params: PotentialParams, regime, component, n, cfg: OracleConfig = OracleConfig(),
                 *, sign: int = 1, strict: bool = True, energy_offset: float = 0.0,
                 level: Optional[EnergyLevel] = None) -> VerificationReport:
    """Compare an analytical level against the Sturm oracle.

    ``energy_offset`` shifts the analytical energy before the check; a
    non-zero value must make the report fail.
    """
    from .wavefunction import count_nodes

    regime = Regime.parse(regime)
    component = Component.parse(component)
    if level is None:
        level = solve_level(params, regime, component, n, sign=sign, strict=strict)
    M = params.M
    E = level.E + energy_offset
    eps_star = target_epsilon(level, M, E)
    kappa = math.sqrt(-eps_star) if eps_star < 0 else level.kappa
    x_max = cfg.domain_factor / kappa
    x_min = cfg.x_min_factor / kappa

    def potential(x):
        return effective_potential(params, regime, component, E, x)

    c = inverse_square_strength(potential, 1e-8 * x_max)
    m = cfg.stretch or choose_stretch(c)
    tol = cfg.tol * kappa**2
    eps_n, (diag, weight, h, s) = stretched_eigenvalue(potential, x_min, x_max, cfg.points, m, level.n, tol)
    eps_half = None
    eps_oracle = eps_n
    if cfg.richardson:
        eps_half, _ = stretched_eigenvalue(potential, x_min, x_max, cfg.points // 2, m, level.n, tol)
        eps_oracle = (4.0 * eps_n - eps_half) / 3.0

    vec = oracle_eigenvector(diag, weight, h, eps_n, kappa**2)
    nodes = count_nodes(vec)

    abs_err = abs(eps_oracle - eps_star)
    rel_err = abs_err / abs(eps_star)
    if not regime.relativistic:
        energy_err = abs_err / (2.0 * M)
    elif abs(E) < 1e-3 * M:
        energy_err = abs(abs(E) - math.sqrt(max(M * M + eps_oracle, 0.0)))
    else:
        energy_err = abs_err / (2.0 * abs(E))
    passed = rel_err <= cfg.rel_tol and nodes == level.n
    return VerificationReport(
        level=level, epsilon_analytic=eps_star, epsilon_oracle=eps_oracle,
        abs_error=abs_err, rel_error=rel_err, energy_error=energy_err,
        nodes=nodes, passed=passed, rel_tol=cfg.rel_tol,
        details={
            "stretch": m,
            "points": cfg.points,
            "inverse_square_strength": c,
            "epsilon_fine": eps_n,
            "epsilon_coarse": eps_half,
            "x_max": x_max,
            "energy_offset": energy_offset,
            "boundary": f"Dirichlet at x={cfg.x_min_factor:g}/kappa and x={cfg.domain_factor:g}/kappa",
        },
    )
