"""Parameter sets and datasets for the energy-sweep and density figures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import KratzerDiracError, ValidationError
from .model import Component, PotentialParams, Regime
from .spectrum import solve_level
from .wavefunction import analytic_partner, build_table, eval_component

SWEEP_RANGES = {"a": (0.1, 10.0), "b": (0.05, 3.0), "q": (0.0, 0.05)}
ZOOM_A = (0.1, 1.0)
SWEEP_POINTS = 200
DENSITY_POINTS = 4000


@dataclass(frozen=True)
class FigureSpec:
    """One figure panel.

    ``fixed`` holds the captioned parameters; ``sweep`` names the swept one
    (``None`` for density panels, which use ``a_values`` and ``n``).
    """

    id: str
    component: Component
    fixed: Tuple[Tuple[str, float], ...]
    sweep: Optional[str] = None
    sweep_range: Optional[Tuple[float, float]] = None
    levels: Tuple[int, ...] = (0, 1, 2)
    a_values: Tuple[float, ...] = ()
    n: Optional[int] = None

    @property
    def kind(self) -> str:
        return "sweep" if self.sweep else "density"

    def params(self, **overrides) -> PotentialParams:
        values = dict(self.fixed)
        values.update(overrides)
        return PotentialParams(**values)


_F1A = (("M", 1.0), ("D", 5.0), ("b", 0.1), ("q", 0.01))
_F1B = (("M", 1.0), ("D", 5.0), ("a", 5.0), ("q", 0.01))
_F1C = (("M", 1.0), ("D", 10.0), ("a", 1.0), ("b", 1.0))
_F3 = (("M", 1.0), ("D", 5.0), ("b", 0.1), ("q", 0.01))
FIG3_A = (1.0, 0.8, 0.5)

FIGURES: Dict[str, FigureSpec] = {
    "1a": FigureSpec("1a", Component.UPPER, _F1A, "a", SWEEP_RANGES["a"]),
    "1b": FigureSpec("1b", Component.UPPER, _F1B, "b", SWEEP_RANGES["b"]),
    "1c": FigureSpec("1c", Component.UPPER, _F1C, "q", SWEEP_RANGES["q"]),
    "2a": FigureSpec("2a", Component.LOWER, _F1A, "a", SWEEP_RANGES["a"]),
    "2b": FigureSpec("2b", Component.LOWER, _F1A, "a", ZOOM_A),
    "2c": FigureSpec("2c", Component.LOWER, _F1B, "b", SWEEP_RANGES["b"]),
    "2d": FigureSpec("2d", Component.LOWER, _F1C, "q", SWEEP_RANGES["q"]),
    "3a": FigureSpec("3a", Component.UPPER, _F3, a_values=FIG3_A, n=0),
    "3b": FigureSpec("3b", Component.UPPER, _F3, a_values=FIG3_A, n=1),
    "3c": FigureSpec("3c", Component.UPPER, _F3, a_values=FIG3_A, n=2),
}


def figure_spec(fig_id: str) -> FigureSpec:
    try:
        return FIGURES[str(fig_id).lower()]
    except KeyError:
        raise ValidationError(f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURES)}") from None


def caption_parameter_sets() -> List[PotentialParams]:
    """Captioned parameters with each sweep variable at its range ends.

    The density panels contribute one set per plotted ``a``.  Duplicates
    are removed; order is stable.
    """
    out: List[PotentialParams] = []
    for spec in FIGURES.values():
        if spec.kind == "sweep":
            for v in spec.sweep_range:
                out.append(spec.params(**{spec.sweep: v}))
        else:
            out.extend(spec.params(a=a) for a in spec.a_values)
    seen, unique = set(), []
    for p in out:
        if p not in seen:
            seen.add(p)
            unique.append(p)
    return unique


def sweep_dataset(spec: FigureSpec, points: int = SWEEP_POINTS):
    """Rows (sweep value, E_0, E_1, E_2); failed solves are ``None``."""
    if spec.kind != "sweep":
        raise ValidationError(f"figure {spec.id} is not an energy sweep")
    if points < 2:
        raise ValidationError("a sweep needs at least 2 points")
    values = np.linspace(spec.sweep_range[0], spec.sweep_range[1], points)
    header = [spec.sweep] + [f"E_{n}" for n in spec.levels]
    rows = []
    failures = []
    for v in values:
        v = float(v)
        params = spec.params(**{spec.sweep: v})
        row = [v]
        for n in spec.levels:
            try:
                row.append(solve_level(params, Regime.SPIN_SYMMETRIC_KRATZER, spec.component, n).E)
            except KratzerDiracError as exc:
                row.append(None)
                failures.append(f"{spec.sweep}={v!r} n={n}: {type(exc).__name__}")
        rows.append(row)
    rows.sort(key=lambda r: r[0])
    return header, rows, failures


def density_dataset(spec: FigureSpec, points: int = DENSITY_POINTS):
    """Rows (x, |phi1|^2, |phi2|^2, density) for every plotted ``a``.

    Each curve is normalized on its own default grid and then evaluated on
    a common x grid reaching 40/kappa for the slowest-decaying curve.
    """
    if spec.kind != "density":
        raise ValidationError(f"figure {spec.id} is not a density panel")
    levels = []
    for a in spec.a_values:
        params = spec.params(a=a)
        level = solve_level(params, Regime.SPIN_SYMMETRIC_KRATZER, spec.component, spec.n)
        table = build_table(level, params)
        levels.append((a, params, level, table))
    x_max = 40.0 / min(lv.kappa for _, _, lv, _ in levels)
    x = np.linspace(x_max / points, x_max, points)
    header = ["x"]
    columns = [x]
    meta = {}
    for a, params, level, table in levels:
        N = table.norm_constant
        p1 = N * eval_component(level, params, x)
        p2 = N * analytic_partner(level, params, x)
        header += [f"phi1_sq_a={a!r}", f"phi2_sq_a={a!r}", f"density_a={a!r}"]
        columns += [p1 * p1, p2 * p2, p1 * p1 + p2 * p2]
        meta[f"a={a!r}"] = {"E": level.E, "N": N, "nodes": table.metadata["nodes"]}
    rows = [list(map(float, r)) for r in zip(*columns)]
    return header, rows, meta


def plot_stub(spec: FigureSpec, data_file: str, header: List[str]) -> str:
    """A few lines of a plain-text plot description (no rendering)."""
    lines = [f"figure {spec.id}", f"data {data_file}", f"x {header[0]}", f"y {' '.join(header[1:])}"]
    if spec.kind == "sweep":
        lines += [f"xlabel {spec.sweep}", "ylabel E/M",
                  f"title energy of {spec.component.value} component versus {spec.sweep}"]
    else:
        lines += ["xlabel x", "ylabel probability density",
                  f"title densities for n={spec.n}, a in {', '.join(map(repr, spec.a_values))}"]
    return "\n".join(lines) + "\n"
