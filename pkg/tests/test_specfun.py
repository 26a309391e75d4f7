import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_genlaguerre, gammaln, hyp1f1

from kratzer_dirac.errors import DomainError, NonConvergence, PochhammerPole, TooFewSamples
from kratzer_dirac.specfun import (
    QuadratureSpec,
    binomial,
    integrate_halfline,
    kummer_polynomial,
    laguerre,
    laguerre_derivative,
    log_gamma,
    second_derivative,
)

ALPHAS = (-0.5, 0.0, 0.3, 1.7, 4.0)


@pytest.mark.parametrize("n,alpha,y,expected", [(0, 3.7, 9.2, 1.0), (1, 0.5, 2.0, -0.5), (2, 0.5, 2.0, -1.125)])
def test_laguerre_examples(n, alpha, y, expected):
    assert laguerre(n, alpha, y) == pytest.approx(expected, abs=1e-15)


def test_laguerre_domain():
    with pytest.raises(DomainError):
        laguerre(2, -1.0, 1.0)
    with pytest.raises(DomainError):
        laguerre(2, 0.5, -0.1)


@given(st.integers(0, 30), st.floats(-0.99, 12.0), st.floats(0.0, 80.0))
def test_laguerre_matches_scipy(n, alpha, y):
    ref = eval_genlaguerre(n, alpha, y)
    assert laguerre(n, alpha, y) == pytest.approx(ref, rel=1e-9, abs=1e-9 * max(1.0, abs(ref)))


def test_laguerre_vectorized_shape():
    y = np.linspace(0, 10, 12).reshape(3, 4)
    out = laguerre(3, 0.7, y)
    assert out.shape == y.shape
    np.testing.assert_allclose(out, eval_genlaguerre(3, 0.7, y), rtol=1e-12)


def test_laguerre_derivative_matches_finite_difference():
    y = np.linspace(0.5, 20, 50)
    h = 1e-6
    fd = (laguerre(5, 1.3, y + h) - laguerre(5, 1.3, y - h)) / (2 * h)
    np.testing.assert_allclose(laguerre_derivative(5, 1.3, y), fd, rtol=1e-6, atol=1e-6)
    assert laguerre_derivative(0, 1.3, 2.0) == 0.0


@pytest.mark.parametrize("n,c2,y,expected", [(1, 2.0, 2.0, 0.0), (2, 2.0, 1.0, 1 / 6), (3, 2.4, 0.0, 1.0)])
def test_kummer_examples(n, c2, y, expected):
    assert kummer_polynomial(n, c2, y) == pytest.approx(expected, abs=1e-15)


def test_kummer_is_accurate_near_polynomial_zeros():
    # alternating series with condition number ~1e8 at this point
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    y = 15.218235970348243
    exact = float(mp.hyp1f1(-11, 5, y))
    assert kummer_polynomial(11, 5.0, y) == pytest.approx(exact, rel=1e-13)


def test_kummer_pole():
    with pytest.raises(PochhammerPole):
        kummer_polynomial(3, -1.0, 0.5)
    # c2 = -3 only bites at k = 4 > n
    assert math.isfinite(kummer_polynomial(3, -3.5, 0.5))


@given(st.integers(0, 15), st.floats(0.1, 10.0), st.floats(0.0, 30.0))
def test_kummer_matches_scipy(n, c2, y):
    ref = hyp1f1(-n, c2, y)
    assert kummer_polynomial(n, c2, y) == pytest.approx(ref, rel=1e-8, abs=1e-8 * max(1.0, abs(ref)))


@pytest.mark.parametrize("x,expected", [(1.0, 0.0), (0.5, 0.5723649429247001), (5.0, math.log(24.0))])
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-14)


@given(st.floats(1e-3, 300.0))
def test_log_gamma_matches_scipy(x):
    assert log_gamma(x) == pytest.approx(gammaln(x), rel=1e-12, abs=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_laguerre_has_n_sign_changes():
    y = np.linspace(1e-9, 80, 200001)
    for alpha in ALPHAS:
        for n in range(9):
            v = laguerre(n, alpha, y)
            assert np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])) == n


def test_kummer_laguerre_identity_randomized():
    rng = np.random.default_rng(20240611)
    worst = 0.0
    for alpha in ALPHAS:
        for n in range(13):
            y = rng.uniform(0, 50, 40)
            lag = laguerre(n, alpha, y)
            via_kummer = binomial(n + alpha, n) * kummer_polynomial(n, alpha + 1, y)
            worst = max(worst, float(np.max(np.abs(via_kummer - lag) / np.abs(lag))))
    assert worst <= 1e-10


def test_integrate_exponential():
    value, info = integrate_halfline(lambda y: math.exp(-y), full_output=True)
    assert value == pytest.approx(1.0, abs=1e-10)
    assert info.truncation_point > 20
    assert info.error_estimate < 1e-9


def test_integrate_laguerre_norm():
    def f(y):
        return np.exp(-y) * y**0.5 * laguerre(1, 0.5, y) ** 2

    value = integrate_halfline(f, vectorized=True)
    assert value == pytest.approx(math.exp(log_gamma(2.5)), rel=1e-10)
    assert value == pytest.approx(1.3293403882, abs=1e-9)


def test_integrate_polynomial_on_finite_interval():
    assert integrate_halfline(lambda x: 3 * x * x, 0.0, 1.0) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_laguerre_orthogonality(alpha):
    spec = QuadratureSpec(rel_tol=1e-10, abs_floor=1e-12)
    for n in range(6):
        for m in range(n, 6):
            def f(y, n=n, m=m):
                return np.exp(-y) * y**alpha * laguerre(n, alpha, y) * laguerre(m, alpha, y)

            value = integrate_halfline(f, spec=spec, vectorized=True)
            if n == m:
                expected = math.exp(log_gamma(n + alpha + 1) - log_gamma(n + 1))
                assert value == pytest.approx(expected, rel=1e-8)
            else:
                assert abs(value) <= 1e-8


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(-3.0, 3.0), st.floats(0.2, 3.0))
def test_integration_is_linear(c1, c2, rate):
    f = lambda y: np.exp(-y)  # noqa: E731
    g = lambda y: y * np.exp(-rate * y)  # noqa: E731
    lhs = integrate_halfline(lambda y: c1 * f(y) + c2 * g(y), vectorized=True)
    rhs = c1 * integrate_halfline(f, vectorized=True) + c2 * integrate_halfline(g, vectorized=True)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-11)


def test_integrate_reports_non_convergence():
    with pytest.raises(NonConvergence):
        integrate_halfline(lambda x: np.sin(1.0 / x) / x, 0.0, 1.0, QuadratureSpec(max_depth=4), vectorized=True)


def test_integrate_rejects_growth():
    with pytest.raises(NonConvergence):
        integrate_halfline(lambda x: 1.0 + x, vectorized=False)


def test_second_derivative_examples():
    x = np.linspace(-2, 3, 41)
    h = x[1] - x[0]
    np.testing.assert_allclose(second_derivative(x**2, h), 2.0, rtol=0, atol=1e-12)
    np.testing.assert_allclose(second_derivative(np.full(10, 4.2), 0.3), 0.0, atol=1e-12)
    x = np.arange(0, 6, 1e-3)
    np.testing.assert_allclose(second_derivative(np.sin(x), 1e-3), -np.sin(x[1:-1]), atol=1e-6)
    assert second_derivative(np.sin(x), 1e-3).shape == (x.size - 2,)


def test_second_derivative_needs_three_samples():
    with pytest.raises(TooFewSamples):
        second_derivative([1.0, 2.0], 0.1)
