"""Command-line interface: spectrum tables, wavefunction samples, verification
suites, flat-limit studies and hyperboloid bound-state counts.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 numeric instability.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__, angular, flat, hyperboloid, sphere
from .params import (
    Geometry,
    HalfInt,
    NoBoundStateError,
    PhysParams,
    QuantumNumbers,
    ValidationError,
    derive_notation,
    enumerate_states,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERIC = 3

TOOL = "micz"


class CliError(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("message", ""))
        self.code = code
        self.payload = payload


# ---------------------------------------------------------------------------
# formatting


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, HalfInt):
        return str(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(config: dict, columns: Sequence[str], rows: Sequence[Sequence], fmt: str,
           extra: Optional[dict] = None) -> str:
    """Serialize a table as CSV (with '#' header comments) or JSON."""
    meta = {"tool": TOOL, "version": __version__}
    if fmt == "json":
        doc = {"config": dict(config, **meta), "columns": list(columns),
               "rows": [[_json_value(v) for v in row] for row in rows]}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# {TOOL} {__version__}\n")
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    for key, value in (extra or {}).items():
        buf.write(f"# {key}: " + json.dumps(value, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_table(text: str) -> tuple:
    """Parse CSV or JSON output back into (config, columns, rows) with floats."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        return doc["config"], doc["columns"], doc["rows"]
    config = {}
    lines = []
    for line in text.splitlines():
        if line.startswith("# config: "):
            config = json.loads(line[len("# config: "):])
        elif not line.startswith("#"):
            lines.append(line)
    reader = csv.reader(lines)
    columns = next(reader)
    rows = []
    for raw in reader:
        row = []
        for cell in raw:
            if cell == "":
                row.append(None)
            elif cell in ("true", "false"):
                row.append(cell == "true")
            else:
                try:
                    row.append(float(cell))
                except ValueError:
                    row.append(cell)
        rows.append(row)
    return config, columns, rows


# ---------------------------------------------------------------------------
# argument parsing


def _half(text: str) -> HalfInt:
    try:
        return HalfInt.of(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a multiple of 1/2") from exc


def _floats(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated float list") from exc


def _add_physics(sp: argparse.ArgumentParser, geometry_required: bool = True):
    sp.add_argument("--geometry", choices=[g.value for g in Geometry],
                    required=geometry_required, default=None if geometry_required else "flat")
    sp.add_argument("--s", type=_half, default=HalfInt(0), help='monopole number, e.g. "1/2"')
    sp.add_argument("--lambda1", type=float, default=0.0)
    sp.add_argument("--lambda2", type=float, default=0.0)
    sp.add_argument("--mu", type=float, default=1.0)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--e2", type=float, default=1.0)
    sp.add_argument("--radius", type=float, default=1.0, help="curvature radius R0")


def _add_output(sp: argparse.ArgumentParser):
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", default=None, help="file path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL, description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="energy levels up to n-max")
    _add_physics(sp)
    sp.add_argument("--n-max", type=_half, required=True)
    _add_output(sp)

    sp = sub.add_parser("wavefunction", help="sample one state on a radial grid")
    _add_physics(sp)
    sp.add_argument("--n", type=_half, required=True)
    sp.add_argument("--j", type=_half, required=True)
    sp.add_argument("--m", type=_half, required=True)
    grid = sp.add_mutually_exclusive_group(required=True)
    grid.add_argument("--points", type=_floats, help="comma-separated coordinates")
    grid.add_argument("--grid", type=_floats, metavar="START,STOP,COUNT",
                      help="uniform grid including both ends")
    sp.add_argument("--theta", type=float, default=1.0)
    sp.add_argument("--phi", type=float, default=0.0)
    _add_output(sp)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True,
                    choices=("normalization", "orthogonality", "ode-residual", "oracle",
                             "limits", "reductions", "identities", "all"))
    sp.add_argument("--geometry", choices=[g.value for g in Geometry], default=None)
    _add_output(sp)

    sp = sub.add_parser("limits", help="flat-limit study under R0 doubling")
    _add_physics(sp)
    sp.add_argument("--n", type=_half, required=True)
    sp.add_argument("--j", type=_half, required=True)
    sp.add_argument("--m", type=_half, required=True)
    sp.add_argument("--radii", type=_floats, default=[10.0, 20.0, 40.0, 80.0])
    _add_output(sp)

    sp = sub.add_parser("bound-counts", help="hyperboloid bound-state counts, oracle vs criteria")
    sp.add_argument("--ratios", type=_floats, default=[0.5, 4.41, 10.0, 100.0],
                    help="values of R0/r0")
    _add_output(sp)
    return parser


def _config(args: argparse.Namespace) -> dict:
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key in ("output",):
            continue
        cfg[key] = str(value) if isinstance(value, HalfInt) else value
    return cfg


def _params(args: argparse.Namespace) -> PhysParams:
    try:
        return PhysParams(mu=args.mu, hbar=args.hbar, e2=args.e2, lambda1=args.lambda1,
                          lambda2=args.lambda2, s=args.s, geometry=Geometry(args.geometry),
                          r_curv=args.radius)
    except ValueError as exc:
        raise CliError(EXIT_INVALID, {"error": "invalid-parameters", "message": str(exc)}) from exc


def _violation_payload(exc: ValidationError) -> dict:
    return {"error": "validation", "message": str(exc),
            "violations": [{"rule": v.rule, "message": v.message} for v in exc.violations]}


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(args) -> tuple:
    p = _params(args)
    g = p.geometry
    columns = ["n", "j", "m", "delta", "j_tilde", "energy",
               "kappa" if g is Geometry.FLAT else "sigma", "bound"]
    if g is Geometry.HYPERBOLOID:
        columns += ["bound_normalizable", "bound_bracket"]
    if p.e2 <= 0:
        raise CliError(EXIT_INVALID, {"error": "invalid-parameters",
                                      "message": "bound spectrum needs e2 > 0"})
    rows = []
    for q in enumerate_states(p, args.n_max):
        nt = derive_notation(p, q)
        if g is Geometry.FLAT:
            energy, scale, bound = flat.flat_energy(p, q), nt.kappa, True
            extra = []
        elif g is Geometry.SPHERE:
            energy, scale, bound = sphere.sphere_energy(p, q), nt.sigma, True
            extra = []
        else:
            normalizable = nt.n_eff**2 < p.r_curv / p.bohr_radius
            bracket = float(q.n) <= math.floor(nt.sigma - nt.delta - 1.0)
            energy = hyperboloid.hyper_energy(p, q) if normalizable else None
            scale, bound = nt.sigma, normalizable
            extra = [normalizable, bracket]
        rows.append([str(q.n), str(q.j), str(q.m), nt.delta, nt.j_tilde, energy, scale, bound]
                    + extra)

    def key(row):
        e = row[5]
        return (e is None, e if e is not None else 0.0,
                HalfInt.of(row[0]), HalfInt.of(row[1]), HalfInt.of(row[2]))

    rows.sort(key=key)
    return columns, rows, None, EXIT_OK


def _grid(args) -> np.ndarray:
    if args.points is not None:
        return np.asarray(args.points, dtype=float)
    if len(args.grid) != 3 or args.grid[2] != int(args.grid[2]) or args.grid[2] < 1:
        raise CliError(EXIT_INVALID, {"error": "invalid-grid",
                                      "message": "--grid expects START,STOP,COUNT with integer COUNT >= 1"})
    return np.linspace(args.grid[0], args.grid[1], int(args.grid[2]))


def cmd_wavefunction(args) -> tuple:
    p = _params(args)
    q = QuantumNumbers(args.n, args.j, args.m)
    x = _grid(args)
    g = p.geometry
    if g is Geometry.FLAT:
        if np.any(x < 0):
            raise CliError(EXIT_INVALID, {"error": "invalid-grid", "message": "r must be >= 0"})
        st = flat.FlatBoundState.build(p, q)
        radial = flat.radial_eval(st, x)
        coord = "r"
    elif g is Geometry.SPHERE:
        if np.any((x < 0) | (x > math.pi)):
            raise CliError(EXIT_INVALID, {"error": "invalid-grid",
                                          "message": "chi must lie in [0, pi]"})
        st = sphere.SphereBoundState.build(p, q)
        radial = sphere.quasi_radial_eval(st, x)
        coord = "chi"
    else:
        if np.any(x < 0):
            raise CliError(EXIT_INVALID, {"error": "invalid-grid", "message": "tau must be >= 0"})
        st = hyperboloid.HyperBoundState.build(p, q)
        radial = hyperboloid.quasi_radial_eval(st, x)
        coord = "tau"
    ang = angular.AngularState(p, q, st.notation)
    z = complex(angular.z_eval(ang, args.theta, args.phi))
    radial = np.atleast_1d(radial)
    rows = [[float(xi), float(ri), z.real, z.imag, float(ri) * z.real, float(ri) * z.imag]
            for xi, ri in zip(x, radial)]
    columns = [coord, "R", "Z_re", "Z_im", "psi_re", "psi_im"]
    extra = {"notation": st.notation.as_dict(), "energy": st.energy}
    return columns, rows, extra, EXIT_OK


def cmd_verify(args) -> tuple:
    from .verification import SUITES, run_suite

    geometry = Geometry(args.geometry) if args.geometry else None
    suites = SUITES if args.suite == "all" else (args.suite,)
    rows = []
    for name in suites:
        for c in run_suite(name, geometry):
            rows.append([c.suite, c.name, c.measured, c.tolerance, c.passed])
    code = EXIT_OK if all(r[4] for r in rows) else EXIT_VERIFY_FAILED
    return ["suite", "check", "measured", "tolerance", "passed"], rows, None, code


def cmd_limits(args) -> tuple:
    from .oracle import limit_study

    p = _params(args)
    if not p.geometry.curved:
        raise CliError(EXIT_INVALID, {"error": "invalid-parameters",
                                      "message": "limits needs --geometry sphere or hyperboloid"})
    q = QuantumNumbers(args.n, args.j, args.m)
    rep = limit_study(p, q, p.geometry, tuple(args.radii))
    rows = [[r.radius, r.curved, r.flat, r.difference, None if math.isnan(r.ratio) else r.ratio]
            for r in rep.rows]
    code = EXIT_OK if rep.passed else EXIT_VERIFY_FAILED
    return ["radius", "energy_curved", "energy_flat", "difference", "ratio"], rows, None, code


def cmd_bound_counts(args) -> tuple:
    from .verification import count_comparison

    rows = []
    for ratio, s, lam, j, oracle, normalizable, bracket in count_comparison(tuple(args.ratios)):
        rows.append([ratio, str(s), lam, str(j), oracle, normalizable, bracket,
                     oracle == normalizable, normalizable == bracket])
    code = EXIT_OK if all(r[7] for r in rows) else EXIT_VERIFY_FAILED
    columns = ["ratio", "s", "lambda", "j", "oracle", "normalizable", "bracket",
               "oracle_agrees", "bracket_agrees"]
    return columns, rows, None, code


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "limits": cmd_limits,
    "bound-counts": cmd_bound_counts,
}


def _emit_error(code: int, payload: dict) -> int:
    sys.stderr.write(json.dumps(dict(payload, exit_code=code), sort_keys=True) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .sphere import NumericInstabilityError, RangeError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        columns, rows, extra, code = COMMANDS[args.command](args)
    except CliError as exc:
        return _emit_error(exc.code, exc.payload)
    except ValidationError as exc:
        return _emit_error(EXIT_INVALID, _violation_payload(exc))
    except NoBoundStateError as exc:
        return _emit_error(EXIT_INVALID, {"error": "no-bound-state", "message": str(exc)})
    except (NumericInstabilityError, RangeError) as exc:
        return _emit_error(EXIT_NUMERIC, {"error": "numeric-instability", "message": str(exc)})
    text = render(_config(args), columns, rows, args.format, extra)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
