"""Special functions and small numerical primitives.

Laguerre polynomials with real upper index, the terminating Kummer series,
log-gamma, an adaptive half-line quadrature and the central second
difference used by the residual checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NonConvergence, PochhammerPole, TooFewSamples


def laguerre(n, alpha, y):
    """Associated Laguerre polynomial L_n^alpha(y) by three-term recurrence.

    ``y`` may be a scalar or an array; the result has the same shape.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError("laguerre is evaluated on y >= 0 only")

    prev = np.ones_like(y)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - y
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - y) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def laguerre_derivative(n, alpha, y):
    """d/dy L_n^alpha(y) = -L_{n-1}^{alpha+1}(y)."""
    if n == 0:
        return np.zeros_like(np.asarray(y, dtype=float)) if np.ndim(y) else 0.0
    return -laguerre(n - 1, alpha + 1, y)


def kummer_polynomial(n, c2, y):
    """1F1(-n; c2; y) for integer n >= 0, i.e. the terminating Kummer series.

    The series alternates in sign and cancels badly near the zeros of the
    polynomial, so the coefficients are formed exactly in rational arithmetic
    and the polynomial is evaluated by compensated (double-double) Horner.
    The result is about as accurate as a twice-working-precision evaluation.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    c = Fraction(float(c2))
    coeffs = [Fraction(1)]
    for k in range(n):
        denom = (c + k) * (k + 1)
        if denom == 0:
            raise PochhammerPole(f"(c2)_{k + 1} vanishes for c2 = {c2!r}")
        coeffs.append(coeffs[-1] * (k - n) / denom)
    y = np.asarray(y, dtype=float)
    hi = np.full_like(y, float(coeffs[-1]))
    lo = np.full_like(y, float(coeffs[-1] - Fraction(float(coeffs[-1]))))
    for coef in reversed(coeffs[:-1]):
        c_hi = float(coef)
        c_lo = float(coef - Fraction(c_hi))
        p, e = _two_prod(hi, y)
        e = e + lo * y
        s, f = _two_sum(p, c_hi)
        f = f + e + c_lo
        hi = s + f
        lo = f - (hi - s)
    out = hi + lo
    return out if out.ndim else float(out)


_SPLIT = 134217729.0  # 2**27 + 1


def _split(a):
    t = _SPLIT * a
    a_hi = t - (t - a)
    return a_hi, a - a_hi


def _two_prod(a, b):
    p = a * b
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


def binomial(top, k):
    """Generalized binomial C(top, k) = Gamma(top+1) / (Gamma(k+1) Gamma(top-k+1))."""
    return math.exp(log_gamma(top + 1) - log_gamma(k + 1) - log_gamma(top - k + 1))


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_floor: float = 1e-14
    max_depth: int = 30

    def __post_init__(self):
        if not self.rel_tol > 0 or not self.abs_floor > 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be at least 1")


@dataclass(frozen=True)
class QuadratureInfo:
    value: float
    error_estimate: float
    truncation_point: float
    evaluations: int


def _find_truncation(f, x_lo, floor):
    # March outward with a growing step until the integrand has stayed below
    # floor * running max over a few probes.
    step = 1.0
    x = x_lo
    running_max = abs(f(x_lo + 1e-12 * max(1.0, abs(x_lo))))
    evals = 1
    quiet = 0
    while True:
        x += step
        val = abs(f(x))
        evals += 1
        running_max = max(running_max, val)
        if running_max > 0 and val < floor * running_max:
            quiet += 1
            if quiet >= 3:
                return x, evals
        else:
            quiet = 0
        step *= 1.25
        if x > 1e12:
            raise NonConvergence("integrand does not decay; cannot truncate the half line")


def integrate_halfline(integrand, x_lo=0.0, x_hi=math.inf, spec: QuadratureSpec = QuadratureSpec(),
                       full_output=False, vectorized=False):
    """Integrate ``integrand`` over ``[x_lo, x_hi]`` with globally adaptive Simpson.

    An infinite upper limit is replaced by the first point where the integrand
    falls below ``spec.abs_floor`` times its running maximum; that point is
    reported when ``full_output`` is true.  Intervals carrying the largest
    error estimates are bisected until the summed estimate meets
    ``max(rel_tol * |I|, abs_floor)``.

    On the half line, or when the integrand is not finite at ``x_lo``, the
    substitution ``x = x_lo + t**2`` is applied first; it turns the power-law
    behaviour ``(x - x_lo)**s`` typical of bound states into ``t**(2s+1)``.

    With ``vectorized=True`` the integrand is called on numpy arrays.
    """
    if x_lo < 0:
        raise DomainError("x_lo must be >= 0")
    if not x_hi > x_lo:
        raise DomainError("need x_hi > x_lo")

    if vectorized:
        base = integrand
    else:
        def base(x):
            x = np.asarray(x, dtype=float)
            return np.array([float(integrand(v)) for v in x.ravel()]).reshape(x.shape)

    substituted = math.isinf(x_hi) or not _finite_at(base, x_lo)
    if substituted:
        def func(t):
            t = np.maximum(t, 1e-150)  # limit t -> 0 of the smoothed integrand
            return 2.0 * t * base(x_lo + t * t)
        lo, hi = 0.0, math.sqrt(x_hi - x_lo) if math.isfinite(x_hi) else math.inf
    else:
        func, lo, hi = base, x_lo, x_hi

    evals = 0
    if math.isinf(hi):
        hi, evals = _find_truncation(lambda t: float(func(np.array([t]))[0]), lo, spec.abs_floor)
    value, err, more = _adaptive_simpson(func, lo, hi, spec)
    evals += more
    if full_output:
        cut = x_lo + hi * hi if substituted else hi
        return value, QuadratureInfo(value, err, float(cut), evals)
    return value


def _finite_at(f, x):
    try:
        with np.errstate(all="raise"):
            return bool(np.all(np.isfinite(f(np.array([float(x)])))))
    except (ZeroDivisionError, FloatingPointError, OverflowError, ValueError):
        return False


def _adaptive_simpson(func, a0, b0, spec, pieces=16):
    evals = 0

    def f(x):
        nonlocal evals
        evals += x.size
        with np.errstate(divide="ignore", invalid="ignore"):
            values = np.asarray(func(x), dtype=float).reshape(x.shape)
        if not np.all(np.isfinite(values)):
            bad = x[~np.isfinite(values)][0]
            raise NonConvergence(f"integrand not finite at x = {bad!r}")
        return values

    a = np.linspace(a0, b0, pieces + 1)[:-1]
    b = np.linspace(a0, b0, pieces + 1)[1:]
    width = b - a
    # five samples per interval: a, a+w/4, a+w/2, a+3w/4, b
    pts = f(np.stack([a, a + 0.25 * width, a + 0.5 * width, a + 0.75 * width, b]))
    depth = np.ones(pieces, dtype=int)

    while True:
        fa, fl, fm, fr, fb = pts
        whole = width * (fa + 4.0 * fm + fb) / 6.0
        halves = 0.5 * width * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb) / 6.0
        err = np.abs(halves - whole) / 15.0
        vals = halves + (halves - whole) / 15.0
        total = math.fsum(vals)
        total_err = float(err.sum())
        target = max(spec.rel_tol * abs(total), spec.abs_floor)
        if total_err <= target:
            return total, total_err, evals

        split = (err > target / err.size) & (err >= 0.05 * err.max())
        if np.any(depth[split] >= spec.max_depth):
            i = int(np.argmax(np.where(split, depth, -1)))
            raise NonConvergence(
                f"adaptive Simpson exhausted depth {spec.max_depth} on [{a[i]:g}, {b[i]:g}] "
                f"(error estimate {total_err:.3e})"
            )
        sa, sw = a[split], width[split]
        new = f(np.stack([sa + 0.125 * sw, sa + 0.375 * sw, sa + 0.625 * sw, sa + 0.875 * sw]))
        left = np.stack([fa[split], new[0], fl[split], new[1], fm[split]])
        right = np.stack([fm[split], new[2], fr[split], new[3], fb[split]])
        keep = ~split
        a = np.concatenate([a[keep], sa, sa + 0.5 * sw])
        width = np.concatenate([width[keep], 0.5 * sw, 0.5 * sw])
        b = a + width
        pts = np.concatenate([pts[:, keep], left, right], axis=1)
        d = depth[split] + 1
        depth = np.concatenate([depth[keep], d, d])


def second_derivative(samples, h):
    """Central second differences on interior points (endpoints dropped)."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape[0] < 3:
        raise TooFewSamples("second_derivative needs at least 3 samples")
    if not h > 0:
        raise DomainError("step must be positive")
    return (samples[:-2] - 2.0 * samples[1:-1] + samples[2:]) / (h * h)
