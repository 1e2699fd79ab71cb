"""``dxl``: tabulation, verification suites, figure data and geometry."""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import densities as dn
from . import fields as fl
from .checks import SUITES, fig2_integrals, run_suite
from .densities import Constants, DensityKind
from .errors import DomainError, DxseaError, NonConvergence, OscillatoryIntegral, RootNotBracketed
from .radialft import QuadratureSpec
from .specfun import ki1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICS = 3

FIGURE_POINTS = 400


@dataclass(frozen=True)
class RunConfig:
    alpha: float = dn.ALPHA_CODATA
    p_fermi: float = 1.0
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    output_precision: int = 17

    def __post_init__(self):
        if not 6 <= self.output_precision <= 17:
            raise DomainError("output_precision must lie in [6, 17]")
        Constants(self.alpha, self.p_fermi)

    @property
    def constants(self) -> Constants:
        return Constants(self.alpha, self.p_fermi)


_QUAD_KEYS = {f.name for f in fields(QuadratureSpec)}


def _coerce(key, text):
    if key == "output_precision" or key in ("max_panels", "accel_terms"):
        value = float(text)
        if value != int(value):
            raise DomainError(f"{key} must be an integer")
        return int(value)
    return float(text)


def load_config(path: str | None, overrides: dict | None = None) -> RunConfig:
    """Read ``key = value`` lines; quadrature keys may carry a ``quadrature.`` prefix."""
    values: dict = {}
    if path is not None:
        parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#", ";"),
                                           inline_comment_prefixes=("#",))
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_string("[run]\n" + fh.read())
        except (OSError, configparser.Error) as exc:
            raise DomainError(f"cannot read config {path!r}: {exc}") from exc
        values.update(parser["run"])
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    top: dict = {}
    quad: dict = {}
    for key, raw in values.items():
        name = key.removeprefix("quadrature.")
        try:
            value = _coerce(name, raw) if isinstance(raw, str) else raw
        except ValueError as exc:
            raise DomainError(f"bad value for {key}: {raw!r}") from exc
        if name in _QUAD_KEYS:
            quad[name] = value
        elif name in ("alpha", "p_fermi", "output_precision") and name == key:
            top[name] = value
        else:
            raise DomainError(f"unknown config key {key!r}")
    return RunConfig(quadrature=replace(QuadratureSpec(), **quad), **top)


def format_float(x: float, precision: int = 17) -> str:
    """Shortest decimal that round-trips the value rounded to ``precision`` digits."""
    x = float(x)
    if precision < 17 and math.isfinite(x):
        x = float(f"{x:.{precision - 1}e}")
    return repr(x)


def write_csv(path, header: str, r, values, precision: int):
    lines = [f"r,{header}"]
    lines += [f"{format_float(a, precision)},{format_float(b, precision)}" for a, b in zip(r, values)]
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def make_grid(rmin: float, rmax: float, points: int, spacing: str = "log") -> np.ndarray:
    if not (math.isfinite(rmin) and math.isfinite(rmax)) or not 0.0 < rmin < rmax:
        raise DomainError("need 0 < rmin < rmax")
    if points < 2:
        raise DomainError("need at least 2 points")
    if spacing == "log":
        return np.geomspace(rmin, rmax, points)
    if spacing == "lin":
        return np.linspace(rmin, rmax, points)
    raise DomainError(f"unknown spacing {spacing!r}")


def _kind_with_order(text: str, n):
    if text in ("hole_n", "electron_n"):
        if n is None:
            raise DomainError(f"{text} needs --n")
        return DensityKind(text, n)
    return DensityKind.parse(text)


def quantity_evaluator(key: str, cfg: RunConfig, n: int | None = None):
    """Map a quantity key to a function of r.

    Keys: ``shell_<kind>``, ``density_<kind>``, ``shell_sum``,
    ``partial_{hole,electron,total}`` (order from ``--n``),
    ``potential_<src>``, ``field_<src>``, ``force:<rho>:<field>``, ``ki1``.
    """
    c = cfg.constants
    spec = cfg.quadrature
    if key == "ki1":
        return lambda r: ki1(r).value
    if key == "shell_sum":
        return lambda r: dn.shell("hole", r, c) + dn.shell("electron", r, c)
    if key.startswith("partial_"):
        part = key.removeprefix("partial_")
        idx = {"hole": 0, "electron": 1, "total": 2}.get(part)
        if idx is None or n is None:
            raise DomainError(f"{key} needs a part in hole|electron|total and --n")
        return lambda r: dn.partial_sum_series(n, r)[idx]
    for prefix, attr in (("shell_", "shell"), ("density_", "density")):
        if key.startswith(prefix):
            kind = _kind_with_order(key.removeprefix(prefix), n)
            return lambda r: getattr(dn.density(kind, r, c, spec), attr)
    if key.startswith("potential_"):
        src = key.removeprefix("potential_")
        if src not in fl.POTENTIAL_SOURCES:
            raise DomainError(f"unknown potential source {src!r}")
        return lambda r: fl.potential(src, r)
    if key.startswith("field_"):
        src = key.removeprefix("field_")
        if src not in fl.FIELD_SOURCES:
            raise DomainError(f"unknown field source {src!r}")
        return lambda r: fl.field(src, r, c)
    if key.startswith("force:"):
        parts = key.split(":")
        if len(parts) != 3 or parts[1] not in fl.RHO_SOURCES or parts[2] not in fl.FIELD_SOURCES:
            raise DomainError(f"force key must be force:<rho>:<field>, got {key!r}")
        _, rho, fsrc = parts
        return lambda r: fl.force_density(rho, fsrc, r, c).value
    raise DomainError(f"unknown quantity {key!r}")


def tabulate(key, rmin, rmax, points, spacing, cfg, n=None):
    grid = make_grid(rmin, rmax, points, spacing)
    fun = quantity_evaluator(key, cfg, n)
    return grid, np.array([fun(float(r)) for r in grid])


def figure_curves(fig_id: int, cfg: RunConfig, max_order: int = 6):
    """Return {filename: (r, values)} for a figure."""
    c = cfg.constants
    grid = np.geomspace(0.01, 10.0, FIGURE_POINTS)
    out = {}
    if fig_id == 2:
        hole = np.array([dn.shell("hole", r) for r in grid])
        elec = np.array([dn.shell("electron", r) for r in grid])
        out = {"fig2_hole.csv": (grid, hole), "fig2_electron.csv": (grid, elec),
               "fig2_sum.csv": (grid, hole + elec)}
    elif fig_id == 3:
        if max_order < 1:
            raise DomainError("max-order must be >= 1")
        hole = np.zeros_like(grid)
        elec = np.zeros_like(grid)
        for k in range(1, max_order + 1):
            hole = hole + np.array([dn.shell(("hole_n", k), r) for r in grid])
            elec = elec + np.array([dn.shell(("electron_n", k), r) for r in grid])
            out[f"fig3_N{k}_hole.csv"] = (grid, hole)
            out[f"fig3_N{k}_electron.csv"] = (grid, elec)
    elif fig_id == 5:
        lam_f = 2.0 * math.pi / c.p_fermi
        rf = np.geomspace(0.01, 3.0, FIGURE_POINTS)
        out = {
            "fig5_gF.csv": (rf, np.array([dn.density("fermi_hole", x * lam_f, c).density for x in rf])),
            "fig5_nxF.csv": (rf, np.array([dn.density("fermi_density_matrix", x * lam_f, c).density
                                           for x in rf])),
        }
    elif fig_id in (6, 7):
        if fig_id == 6:
            pairs = [(rho, f) for rho in ("hole", "electron") for f in ("hole", "electron")]
        else:
            pairs = [(rho, f) for rho in fl.RHO_SOURCES for f in ("reference", "vacuum_polarization")]
        for rho, f in pairs:
            vals = np.array([fl.force_density(rho, f, r, c).value for r in grid])
            out[f"fig{fig_id}_{rho}_{f}.csv"] = (grid, vals)
    else:
        raise DomainError(f"unknown figure id {fig_id!r}")
    return out


def geometry_report(cfg: RunConfig) -> dict:
    g = dn.exciton_geometry(cfg.constants)
    return {
        "exciton": {"bond_short_lambda_c": g.bond_short, "bond_long_lambda_c": g.bond_long,
                    "apex_angle_deg": g.apex_angle_deg},
        "positronium_ion": {"bond_short_bohr": 5.5, "bond_long_bohr": 9.0, "apex_angle_deg": 110.0},
        "size_ratio": g.positronium_ratio,
    }


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value file with run settings")
    p = argparse.ArgumentParser(prog="dxl", description="Exchange-hole numerics in the Dirac sea.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tabulate", parents=[common], help="write one quantity on a radial grid as CSV")
    t.add_argument("--quantity", required=True)
    t.add_argument("--rmin", type=float, required=True)
    t.add_argument("--rmax", type=float, required=True)
    t.add_argument("--points", type=int, required=True)
    t.add_argument("--spacing", choices=("log", "lin"), default="log")
    t.add_argument("--n", type=int, help="hierarchy order for hole_n, electron_n and partial_*")
    t.add_argument("--pF", type=float, dest="p_fermi", help="Fermi momentum in units m_e c")
    t.add_argument("--out", default="-")

    c = sub.add_parser("check", parents=[common], help="run a verification suite")
    c.add_argument("--suite", required=True, choices=SUITES + ("all",))
    c.add_argument("--json", metavar="PATH", dest="json_out")

    f = sub.add_parser("figure", parents=[common], help="write the curves of one figure")
    f.add_argument("--id", type=int, required=True, dest="fig_id", choices=(2, 3, 5, 6, 7))
    f.add_argument("--max-order", type=int, default=6)
    f.add_argument("--out-dir", default=".")

    sub.add_parser("geometry", parents=[common], help="print the exciton triangle")
    return p


def _run(args) -> int:
    overrides = {"p_fermi": getattr(args, "p_fermi", None)}
    cfg = load_config(args.config, overrides)
    prec = cfg.output_precision
    if args.command == "tabulate":
        r, v = tabulate(args.quantity, args.rmin, args.rmax, args.points, args.spacing, cfg, args.n)
        write_csv(args.out, args.quantity, r, v, prec)
        return EXIT_OK
    if args.command == "check":
        rep = run_suite(args.suite, cfg.quadrature)
        for ch in rep.checks:
            flag = "PASS" if ch.passed else "FAIL"
            print(f"{flag} {ch.name}: computed={ch.computed!r} expected={ch.expected!r} tol={ch.tolerance!r}")
        print(f"{rep.suite}: {'all checks passed' if rep.all_pass else 'some checks failed'}")
        if args.json_out:
            with open(args.json_out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(rep.to_json(indent=1) + "\n")
        return EXIT_OK if rep.all_pass else EXIT_CHECK_FAILED
    if args.command == "figure":
        curves = figure_curves(args.fig_id, cfg, args.max_order)
        os.makedirs(args.out_dir, exist_ok=True)
        for name, (r, v) in curves.items():
            write_csv(os.path.join(args.out_dir, name), name.removesuffix(".csv"), r, v, prec)
        if args.fig_id == 2:
            ih, ie, isum = fig2_integrals(FIGURE_POINTS)
            print(f"integrals: hole={float(ih)!r} electron={float(ie)!r} sum={float(isum)!r}")
        print(f"wrote {len(curves)} files to {args.out_dir}")
        return EXIT_OK
    rep = geometry_report(cfg)
    ex, ps = rep["exciton"], rep["positronium_ion"]
    print(f"exchange exciton: bonds {ex['bond_short_lambda_c']:.4f}, {ex['bond_short_lambda_c']:.4f}, "
          f"{ex['bond_long_lambda_c']:.4f} lambda_C; apex {ex['apex_angle_deg']:.2f} deg")
    print(f"positronium ion:  bonds {ps['bond_short_bohr']} a0, {ps['bond_long_bohr']} a0; "
          f"apex {ps['apex_angle_deg']:.0f} deg")
    print(f"size ratio: {rep['size_ratio']:.1f}")
    print(json.dumps(rep))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _run(args)
    except (NonConvergence, OscillatoryIntegral, RootNotBracketed) as exc:
        print(f"dxl: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except (DomainError, KeyError, OSError) as exc:
        print(f"dxl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DxseaError as exc:
        print(f"dxl: {exc}", file=sys.stderr)
        return EXIT_NUMERICS


if __name__ == "__main__":
    sys.exit(main())
