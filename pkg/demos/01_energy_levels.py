"""Energy levels for the spin-symmetric Kratzer problem and its limits.

Run:  python3 demos/01_energy_levels.py
"""
from kratzer_dirac import PotentialParams, level_coulomb, level_nonrel, level_scalar_only, solve_level
from kratzer_dirac.errors import NoBoundState

params = PotentialParams(M=1.0, D=5.0, a=1.0, b=0.1, q=0.01)

# The full problem needs a root solve; each level carries its exponent p
# and decay constant kappa alongside the energy.
print("Kratzer, upper component")
for n in range(4):
    lv = solve_level(params, "kratzer", "upper", n)
    print(f"  n={n}  E={lv.E:+.12f}  p={lv.p:.6f}  kappa={lv.kappa:.6f}")

# Switching off q gives closed forms; the root solver reproduces them.
coul = params.replace(q=0.0)
print("\nq = 0: root solver against closed form")
for n in range(3):
    e_root = solve_level(coul, "kratzer", "upper", n).E
    e_closed = level_coulomb(coul, "upper", n).E
    print(f"  n={n}  {e_root:+.15f}  {e_closed:+.15f}")

# The lower component at b+1 is degenerate with the upper one at b.
print("\nlower(b+1) versus upper(b)")
for n in range(3):
    up = level_coulomb(coul, "upper", n).E
    lo = level_coulomb(coul.replace(b=coul.b + 1), "lower", n).E
    print(f"  n={n}  {up:+.15f}  {lo:+.15f}")

# Weak coupling: the relativistic levels approach the Schroedinger ones.
weak = PotentialParams(M=1.0, D=0.02, a=1.0, b=0.3, q=0.0)
print("\nweak coupling, binding energies E - M")
for n in range(3):
    print(f"  n={n}  Dirac {level_coulomb(weak, 'upper', n).E - 1:+.3e}"
          f"  Schroedinger {level_nonrel(weak, n).E - 1:+.3e}")

# A pure scalar potential binds in +/- pairs until 2Da reaches n+1+b.
scalar = PotentialParams(M=1.0, D=0.5, a=1.0, b=0.3, q=0.0)
print("\nscalar only")
for n in range(4):
    try:
        lv = level_scalar_only(scalar, n)
        print(f"  n={n}  E=+/-{lv.E:.12f}")
    except NoBoundState as exc:
        print(f"  n={n}  no bound state ({exc})")
