"""Command-line front end.

    kratzer-dirac spectrum     --regime kratzer --component upper --M 1 --D 5 --a 1 --b 0.1 --q 0.01 --n 0..2
    kratzer-dirac wavefunction ... --n 1 --format csv --out phi.csv
    kratzer-dirac verify       ... --n 0..3
    kratzer-dirac figure       --id 1a --out figs/

Exit codes: 0 success, 1 usage or validation error, 2 solver error,
3 verification failure.  Files are written atomically; next to every
output file a ``.cfg`` sidecar records the effective options so that
``--config <sidecar>`` reproduces the run.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .errors import KratzerDiracError, NoBoundState, SingularDenominator, SolverError, ValidationError
from .figures import FIGURES, density_dataset, figure_spec, plot_stub, sweep_dataset
from .model import Component, PotentialParams, Regime, validate
from .oracle import OracleConfig, verify_level
from .spectrum import AbsentLevel, solve_level
from .wavefunction import DEFAULT_POINTS, Grid, build_table

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3
SPECTRUM_KEYS = ["regime", "component", "n", "E", "p", "alpha", "kappa", "diagnostics"]


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    params: Optional[PotentialParams]
    regime: Regime
    component: Component
    n_range: range
    fmt: str
    out: Optional[str]
    units_of_M: bool
    strict: bool
    sign: int = 1
    energy_offset: float = 0.0
    grid: dict = field(default_factory=dict)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    figure_ids: Sequence[str] = ()
    sweep_points: int = 200
    argv: List[str] = field(default_factory=list)


# -- argument handling --------------------------------------------------------

def parse_n(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", str(text))
    if not m:
        raise UsageError(f"--n expects an integer or a range i..j, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise UsageError(f"--n range {text!r} is empty")
    return range(lo, hi + 1)


def _on_off(text: str) -> bool:
    t = str(text).lower()
    if t in ("on", "true", "1", "yes"):
        return True
    if t in ("off", "false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected on/off, got {text!r}")


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _shared(p: argparse.ArgumentParser):
    g = p.add_argument_group("model")
    g.add_argument("--M", type=_finite, default=1.0, help="mass (energy units)")
    g.add_argument("--D", type=_finite, help="dissociation energy")
    g.add_argument("--a", type=_finite, help="length parameter")
    g.add_argument("--b", type=_finite, help="pseudoscalar strength")
    g.add_argument("--q", type=_finite, default=0.0, help="Kratzer shape parameter")
    g.add_argument("--regime", choices=[r.value for r in Regime], default=Regime.SPIN_SYMMETRIC_KRATZER.value)
    g.add_argument("--component", choices=[c.value for c in Component], default=Component.UPPER.value)
    g.add_argument("--n", default="0", help="quantum number or range i..j")
    g.add_argument("--sign", type=int, choices=(1, -1), default=1, help="energy branch for the scalar regime")
    g.add_argument("--strict-b", type=_on_off, default=True, metavar="{on,off}")
    o = p.add_argument_group("output")
    o.add_argument("--format", choices=("json", "csv"), default="json")
    o.add_argument("--out", help="output file (stdout when omitted)")
    o.add_argument("--config", help="key=value file; command-line flags win")
    o.add_argument("--in-units-of-M", action="store_true", dest="units_of_M")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kratzer-dirac", description="Dirac bound states for a Kratzer plus pseudoscalar Coulomb potential.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="energy levels")
    _shared(sp)

    wp = sub.add_parser("wavefunction", help="normalized spinor table")
    _shared(wp)
    wp.add_argument("--grid-points", type=int, default=DEFAULT_POINTS)
    wp.add_argument("--grid-min-factor", type=_finite, default=1e-6, help="x_min in units of 1/kappa")
    wp.add_argument("--grid-max-factor", type=_finite, default=40.0, help="x_max in units of 1/kappa")

    vp = sub.add_parser("verify", help="compare levels against the Sturm oracle")
    _shared(vp)
    d = OracleConfig()
    vp.add_argument("--oracle-points", type=int, default=d.points)
    vp.add_argument("--oracle-domain-factor", type=_finite, default=d.domain_factor)
    vp.add_argument("--oracle-min-factor", type=_finite, default=d.x_min_factor)
    vp.add_argument("--oracle-tol", type=_finite, default=d.tol)
    vp.add_argument("--oracle-rel-tol", type=_finite, default=d.rel_tol)
    vp.add_argument("--oracle-stretch", type=int, default=None)
    vp.add_argument("--richardson", type=_on_off, default=True, metavar="{on,off}")
    vp.add_argument("--inject-energy-offset", type=_finite, default=0.0,
                    help="shift every analytic energy by this many units of M before checking")

    fp = sub.add_parser("figure", help="figure datasets")
    fp.add_argument("--id", required=True, help=f"panel id ({', '.join(FIGURES)}) or 'all'")
    fp.add_argument("--out", default=".", help="output directory")
    fp.add_argument("--format", choices=("csv",), default="csv")
    fp.add_argument("--sweep-points", type=int, default=200)
    fp.add_argument("--config", help="key=value file; command-line flags win")
    return parser


def read_config(path: str) -> List[str]:
    """Turn a key=value file into argv tokens (``#`` starts a comment)."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from None
    tokens: List[str] = []
    for num, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-")
        if key == "in-units-of-M":
            if _on_off(value):
                tokens.append("--in-units-of-M")
            continue
        tokens += [f"--{key}", value]
    return tokens


def _expand_config(argv: List[str]) -> List[str]:
    # config tokens go right after the subcommand so later command-line flags override them
    for i, tok in enumerate(argv):
        path = None
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
        if path is not None:
            cmd_at = next((j for j, t in enumerate(argv) if not t.startswith("-")), 0)
            return argv[:cmd_at + 1] + read_config(path) + argv[cmd_at + 1:]
    return argv


def make_run_config(argv: Sequence[str]) -> RunConfig:
    argv = _expand_config(list(argv))
    ns = build_parser().parse_args(argv)
    if ns.command == "figure":
        ids = list(FIGURES) if ns.id.lower() == "all" else [figure_spec(i).id for i in ns.id.split(",")]
        if ns.sweep_points < 2:
            raise UsageError("--sweep-points must be >= 2")
        return RunConfig("figure", None, Regime.SPIN_SYMMETRIC_KRATZER, Component.UPPER, range(0),
                         "csv", ns.out, True, True, figure_ids=ids, sweep_points=ns.sweep_points, argv=argv)

    missing = [k for k in ("D", "a", "b") if getattr(ns, k) is None]
    if missing:
        raise UsageError(f"missing required parameter(s): {', '.join('--' + k for k in missing)}")
    params = PotentialParams(ns.M, ns.D, ns.a, ns.b, ns.q)
    cfg = RunConfig(ns.command, params, Regime.parse(ns.regime), Component.parse(ns.component),
                    parse_n(ns.n), ns.format, ns.out, ns.units_of_M, ns.strict_b, sign=ns.sign, argv=argv)
    if ns.command == "wavefunction":
        if len(cfg.n_range) != 1:
            raise UsageError("wavefunction takes a single --n")
        cfg.grid = {"points": ns.grid_points, "min_factor": ns.grid_min_factor, "max_factor": ns.grid_max_factor}
        if ns.grid_points < 3 or not 0 < ns.grid_min_factor < ns.grid_max_factor:
            raise UsageError("grid flags need points >= 3 and 0 < grid-min-factor < grid-max-factor")
    if ns.command == "verify":
        cfg.oracle = OracleConfig(points=ns.oracle_points, domain_factor=ns.oracle_domain_factor,
                                  x_min_factor=ns.oracle_min_factor, tol=ns.oracle_tol,
                                  richardson=ns.richardson, stretch=ns.oracle_stretch, rel_tol=ns.oracle_rel_tol)
        cfg.energy_offset = ns.inject_energy_offset * ns.M
    validate(params, cfg.regime, cfg.component, cfg.strict)
    return cfg


# -- encoding ------------------------------------------------------------------

def _scalar(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def _csv_cell(v) -> str:
    v = _scalar(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def encode(records: List[dict], keys: List[str], fmt: str) -> str:
    if fmt == "json":
        clean = [{k: _scalar(r.get(k)) for k in keys} for r in records]
        return json.dumps(clean, indent=1, ensure_ascii=False, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for r in records:
        w.writerow([_csv_cell(r.get(k)) for k in keys])
    return buf.getvalue()


def encode_rows(header: List[str], rows: List[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def flat_diagnostics(d: dict) -> str:
    parts = []
    for k in sorted(d):
        v = _scalar(d[k])
        if isinstance(v, float):
            v = repr(v)
        parts.append(f"{k}={v}")
    return ";".join(parts)


def atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sidecar(cfg: RunConfig) -> str:
    # the output path is deliberately left out so identical runs give identical files
    lines = [f"# kratzer-dirac {cfg.command}"]
    if cfg.params is not None:
        for k, v in cfg.params.as_dict().items():
            lines.append(f"{k}={float(v)!r}")
        lines += [f"regime={cfg.regime.value}", f"component={cfg.component.value}",
                  f"n={cfg.n_range.start}..{cfg.n_range.stop - 1}", f"sign={cfg.sign}",
                  f"strict-b={'on' if cfg.strict else 'off'}", f"format={cfg.fmt}",
                  f"in-units-of-M={'true' if cfg.units_of_M else 'false'}"]
    if cfg.command == "wavefunction":
        lines += [f"grid-points={cfg.grid['points']}", f"grid-min-factor={cfg.grid['min_factor']!r}",
                  f"grid-max-factor={cfg.grid['max_factor']!r}"]
    if cfg.command == "verify":
        o = cfg.oracle
        lines += [f"oracle-points={o.points}", f"oracle-domain-factor={o.domain_factor!r}",
                  f"oracle-min-factor={o.x_min_factor!r}", f"oracle-tol={o.tol!r}",
                  f"oracle-rel-tol={o.rel_tol!r}", f"richardson={'on' if o.richardson else 'off'}",
                  f"inject-energy-offset={cfg.energy_offset / cfg.params.M!r}"]
        if o.stretch is not None:
            lines.append(f"oracle-stretch={o.stretch}")
    if cfg.command == "figure":
        lines += [f"id={','.join(cfg.figure_ids)}", f"sweep-points={cfg.sweep_points}"]
    return "\n".join(lines) + "\n"


def emit(cfg: RunConfig, text: str, meta: Optional[dict] = None):
    if cfg.out is None:
        sys.stdout.write(text)
        if meta:
            sys.stderr.write(json.dumps(meta, sort_keys=True, allow_nan=False) + "\n")
        return
    atomic_write(cfg.out, text)
    if meta:
        atomic_write(cfg.out + ".meta.json", json.dumps(meta, indent=1, sort_keys=True, allow_nan=False) + "\n")
    atomic_write(cfg.out + ".cfg", _sidecar(cfg))


# -- commands ------------------------------------------------------------------

def _unit(cfg: RunConfig) -> float:
    return cfg.params.M if cfg.units_of_M else 1.0


def cmd_spectrum(cfg: RunConfig) -> int:
    u = _unit(cfg)
    records = []
    for n in cfg.n_range:
        try:
            lv = solve_level(cfg.params, cfg.regime, cfg.component, n, sign=cfg.sign, strict=cfg.strict)
        except NoBoundState as exc:
            lv = AbsentLevel(n, cfg.regime, cfg.component, f"NoBoundState: {exc}")
        if isinstance(lv, AbsentLevel):
            records.append({"regime": lv.regime.value, "component": lv.component.value, "n": n,
                            "E": None, "p": None, "alpha": None, "kappa": None,
                            "diagnostics": flat_diagnostics({"status": "NoBoundState", "reason": lv.reason})})
            continue
        diag = dict(lv.diagnostics, status="ok")
        if lv.regime is Regime.SCALAR_ONLY:
            diag["sign"] = lv.sign
        records.append({"regime": lv.regime.value, "component": lv.component.value, "n": n,
                        "E": lv.E / u, "p": lv.p, "alpha": lv.alpha, "kappa": lv.kappa / u,
                        "diagnostics": flat_diagnostics(diag)})
    emit(cfg, encode(records, SPECTRUM_KEYS, cfg.fmt))
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig) -> int:
    n = cfg.n_range.start
    level = solve_level(cfg.params, cfg.regime, cfg.component, n, sign=cfg.sign, strict=cfg.strict)
    k = level.kappa
    grid = Grid(cfg.grid["min_factor"] / k, cfg.grid["max_factor"] / k, cfg.grid["points"])
    table = build_table(level, cfg.params, grid)
    u = _unit(cfg)
    keys = ["x", "phi1", "phi2", "density"]
    records = [dict(zip(keys, row)) for row in zip(grid.x, table.phi1, table.phi2, table.density)]
    meta = {
        "regime": level.regime.value, "component": level.component.value, "n": n,
        "E": level.E / u, "p": level.p, "alpha": level.alpha, "kappa": level.kappa / u,
        "N": table.norm_constant, "grid_points": grid.points, "x_min": grid.x_min, "x_max": grid.x_max,
    }
    meta.update({k2: _scalar(v) for k2, v in table.metadata.items()})
    emit(cfg, encode(records, keys, cfg.fmt), meta)
    return EXIT_OK


VERIFY_KEYS = ["regime", "component", "n", "E", "epsilon_analytic", "epsilon_oracle", "abs_error",
               "rel_error", "energy_error", "nodes", "passed", "rel_tol", "stretch", "points", "boundary"]


def cmd_verify(cfg: RunConfig) -> int:
    u = _unit(cfg)
    records = []
    for n in cfg.n_range:
        rep = verify_level(cfg.params, cfg.regime, cfg.component, n, cfg.oracle, sign=cfg.sign,
                           strict=cfg.strict, energy_offset=cfg.energy_offset)
        rec = rep.as_record()
        rec["E"] = (rep.level.E + cfg.energy_offset) / u
        for key in ("epsilon_analytic", "epsilon_oracle", "abs_error"):
            rec[key] = rec[key] / (u * u)
        rec["energy_error"] = rec["energy_error"] / u
        records.append(rec)
    emit(cfg, encode(records, VERIFY_KEYS, cfg.fmt))
    worst = max(r["rel_error"] for r in records)
    failed = [r["n"] for r in records if not r["passed"]]
    status = "PASS" if not failed else f"FAIL (n = {', '.join(map(str, failed))})"
    sys.stderr.write(f"verify: {len(records)} level(s), max relative error {worst:.3e}, {status}\n")
    return EXIT_OK if not failed else EXIT_VERIFY


def cmd_figure(cfg: RunConfig) -> int:
    outdir = cfg.out
    for fid in cfg.figure_ids:
        spec = figure_spec(fid)
        name = f"fig{spec.id}.csv"
        meta = {"figure": spec.id, "component": spec.component.value, "regime": Regime.SPIN_SYMMETRIC_KRATZER.value,
                "fixed": {k: v for k, v in spec.fixed}, "units": "natural, M = 1"}
        if spec.kind == "sweep":
            header, rows, failures = sweep_dataset(spec, cfg.sweep_points)
            meta.update(sweep=spec.sweep, sweep_range=list(spec.sweep_range), sweep_points=cfg.sweep_points,
                        levels=list(spec.levels), failures=failures)
        else:
            header, rows, info = density_dataset(spec)
            meta.update(n=spec.n, a_values=list(spec.a_values), curves=info)
        atomic_write(os.path.join(outdir, name), encode_rows(header, rows))
        atomic_write(os.path.join(outdir, f"fig{spec.id}.meta.json"),
                     json.dumps(meta, indent=1, sort_keys=True, allow_nan=False) + "\n")
        atomic_write(os.path.join(outdir, f"fig{spec.id}.plot"), plot_stub(spec, name, header))
    atomic_write(os.path.join(outdir, "figure.cfg"), _sidecar(cfg))
    return EXIT_OK


COMMANDS = {"spectrum": cmd_spectrum, "wavefunction": cmd_wavefunction, "verify": cmd_verify, "figure": cmd_figure}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = make_run_config(argv)
        return COMMANDS[cfg.command](cfg)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except ValidationError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except SingularDenominator as exc:
        sys.stderr.write(f"error: SingularDenominator: {exc}\n")
        return EXIT_SOLVER
    except (SolverError, KratzerDiracError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_SOLVER
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
