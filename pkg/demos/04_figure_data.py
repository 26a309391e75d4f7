"""Regenerating the data behind the energy sweeps and density plots.

Run:  python3 demos/04_figure_data.py [outdir]
The same files come from:  kratzer-dirac figure --id all --out outdir
"""
import sys

from kratzer_dirac.figures import FIGURES, density_dataset, sweep_dataset

spec = FIGURES["1a"]
header, rows, failures = sweep_dataset(spec, points=11)
print(f"figure {spec.id}: {header}")
for row in rows:
    print("  " + "  ".join(f"{v:+.6f}" for v in row))
print(f"  failed solves: {len(failures)}")

spec = FIGURES["3a"]
header, rows, meta = density_dataset(spec, points=400)
print(f"\nfigure {spec.id}: {len(rows)} rows, columns {header}")
for key, info in meta.items():
    print(f"  {key}: E={info['E']:+.8f}  nodes={info['nodes']}")

if len(sys.argv) > 1:
    from kratzer_dirac.cli import main
    sys.exit(main(["figure", "--id", "all", "--out", sys.argv[1]]))
