"""Special-function helpers: Laguerre, Kummer and half-line quadrature.

Run:  python3 demos/05_special_functions.py
"""
import math

import numpy as np

from kratzer_dirac import QuadratureSpec, integrate_halfline, kummer_polynomial, laguerre, log_gamma
from kratzer_dirac.specfun import binomial

y = np.linspace(0.0, 30.0, 7)
n, alpha = 6, 1.3
lag = laguerre(n, alpha, y)
kum = binomial(n + alpha, n) * kummer_polynomial(n, alpha + 1, y)
print("L_n^alpha(y) and binom(n+alpha, n) M(-n, alpha+1, y):")
for yi, l, k in zip(y, lag, kum):
    print(f"  y={yi:5.1f}  {l:+.15e}  {k:+.15e}")

# Orthogonality under the weight y^alpha e^-y.
spec = QuadratureSpec(rel_tol=1e-10, abs_floor=1e-12)
for m in (2, 3):
    val = integrate_halfline(lambda t: np.exp(-t) * t**alpha * laguerre(2, alpha, t) * laguerre(m, alpha, t),
                             spec=spec, vectorized=True)
    print(f"<L_2, L_{m}> = {val:+.3e}")
expected = math.exp(log_gamma(2 + alpha + 1) - log_gamma(3))
print(f"norm of L_2 from log_gamma: {expected:.12f}")
