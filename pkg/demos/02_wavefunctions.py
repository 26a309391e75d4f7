"""Normalized spinor tables and their basic properties.

Run:  python3 demos/02_wavefunctions.py
"""
import numpy as np

from kratzer_dirac import PotentialParams, build_table, count_nodes, ode_residual, solve_level

params = PotentialParams(M=1.0, D=5.0, a=1.0, b=0.1, q=0.01)

for n in range(3):
    level = solve_level(params, "kratzer", "upper", n)
    table = build_table(level, params)
    x, rho = table.grid.x, table.density
    print(f"n={n}  E={level.E:+.10f}  N={table.norm_constant:.6e}")
    print(f"      nodes of phi1: {count_nodes(table.phi1)}")
    print(f"      density peaks at x={x[np.argmax(rho)]:.4f}, tail beyond grid {table.metadata['tail_estimate']:.1e}")
    print(f"      relative ODE residual on the grid: {table.metadata['ode_residual']:.2e}")

# The residual grows once the energy is wrong, which is what makes it a
# useful consistency check.
level = solve_level(params, "kratzer", "upper", 0)
table = build_table(level, params)
raw = table.phi1 / table.norm_constant
for shift in (0.0, 1e-4, 1e-2):
    r = ode_residual(level, raw, params, table.grid, E=level.E + shift)
    print(f"energy shifted by {shift:g}: residual {r:.3e}")
