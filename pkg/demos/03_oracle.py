"""Checking analytical levels against the finite-difference Sturm oracle.

The oracle knows nothing about Laguerre polynomials: it discretizes the
effective Schroedinger-like operator and counts eigenvalues by bisection.

Run:  python3 demos/03_oracle.py
"""
from kratzer_dirac import OracleConfig, PotentialParams, verify_level

params = PotentialParams(M=1.0, D=5.0, a=1.0, b=0.1, q=0.01)

for component in ("upper", "lower"):
    for n in range(3):
        rep = verify_level(params, "kratzer", component, n)
        print(f"{component:5s} n={n}  analytic {rep.epsilon_analytic:+.10f}  oracle {rep.epsilon_oracle:+.10f}"
              f"  rel err {rep.rel_error:.1e}  {'PASS' if rep.passed else 'FAIL'}")

# A deliberately wrong energy must be caught.
rep = verify_level(params, "kratzer", "upper", 0, energy_offset=1e-3)
print(f"\nwith E shifted by 1e-3 M: rel err {rep.rel_error:.1e}  {'PASS' if rep.passed else 'FAIL'}")

# Coarser oracle grids converge towards the same number.
for points in (2048, 8192, 32768):
    rep = verify_level(params, "kratzer", "upper", 1, OracleConfig(points=points, richardson=False))
    print(f"points={points:6d}  oracle eps {rep.epsilon_oracle:+.12f}")
