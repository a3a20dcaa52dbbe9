"""Command-line entry point.

Every computation in the library is reachable as a subcommand emitting
JSON (default) or CSV.  Each JSON payload carries a reproducibility
manifest; identical argv produces byte-identical output except for the
wall-time field.  Exit codes: 0 success, 1 computation error (with a
structured {code, message, context} object), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import time
from typing import Callable, Dict, List, Optional

import numpy as np

from . import __version__
from .anomaly import anomaly_quadrature
from .classical import (
    PowerLawPotential,
    dilatation_drift_report,
    scale_condition_residual,
)
from .core import GridFunction, Interval, OperatorSpec, UnitSystem, inner_product, norm
from .deficiency import solve_deficiency, verify_deficiency_numerically
from .discrete import (
    commuting_observables_demo,
    eigenvector_commutator_demo,
    hermiticity_defect_demo,
    trace_commutator_check,
)
from .errors import SaextError, SweepSizeError
from .extension import halfline_bc_from_unitary, momentum_bc_from_unitary
from .geometry import commutator_preservation_check, radial_symmetry_defect
from .spectral import (
    bound_state,
    halfline_robin_spectrum,
    momentum_spectrum,
    reflection_coefficient,
    reflection_phase,
    well_spectrum,
)

__all__ = ["main", "load_schema"]

_SWEEP_LIMIT = 1_000_000

#: Operative default tolerance recorded in the manifest (and consumed by the
#: subcommands that integrate something); --tol then SAEXT_TOL override it.
_DEFAULT_TOL = {
    "classical": 1e-10,
    "boundstate": 1e-10,
    "anomaly": 1e-6,
}


# ---------------------------------------------------------------------------
# Flag value parsers (argparse ``type=`` callables; errors become exit 2)
# ---------------------------------------------------------------------------

def _parse_units(text: str) -> UnitSystem:
    fields = {"hbar": 1.0, "two_m": 1.0}
    for part in text.split(","):
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep or key not in fields:
            raise argparse.ArgumentTypeError(
                "units must look like hbar=<v>,two_m=<v>; got %r" % (text,)
            )
        try:
            fields[key] = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError("bad unit value %r" % (value,))
    try:
        return UnitSystem(**fields)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_interval(text: str) -> Interval:
    try:
        a_text, b_text = text.split(",")
        a, b = float(a_text), float(b_text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "interval must be a,b (inf endpoints allowed); got %r" % (text,)
        )
    if math.isfinite(a) and math.isfinite(b):
        if not a < b:
            raise argparse.ArgumentTypeError("interval needs a < b")
        return Interval.finite(a, b)
    if math.isfinite(a) and b == math.inf:
        return Interval.half_line(a)
    if a == -math.inf and b == math.inf:
        return Interval.full_line()
    raise argparse.ArgumentTypeError(
        "supported intervals: a,b / a,inf / -inf,inf; got %r" % (text,)
    )


def _parse_probe(text: str) -> dict:
    kind, sep, rest = text.partition(":")
    if kind != "bump" or not sep:
        raise argparse.ArgumentTypeError("probe must be bump:<a>,<b>; got %r" % (text,))
    try:
        a_text, b_text = rest.split(",")
        a, b = float(a_text), float(b_text)
    except ValueError:
        raise argparse.ArgumentTypeError("probe must be bump:<a>,<b>; got %r" % (text,))
    if not (0.0 < a < b):
        raise argparse.ArgumentTypeError("bump support needs 0 < a < b")
    return {"kind": "bump", "a": a, "b": b}


def _parse_sweep(text: str) -> tuple:
    name, sep, grid = text.partition("=")
    parts = grid.split(":")
    if not sep or len(parts) != 3:
        raise argparse.ArgumentTypeError(
            "sweep must be param=start:stop:count; got %r" % (text,)
        )
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError("bad sweep grid in %r" % (text,))
    if count < 0:
        raise argparse.ArgumentTypeError("sweep count must be >= 0")
    return (name, start, stop, count)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _sanitize(obj):
    """JSON-safe copy: numpy scalars unwrapped, non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if math.isnan(f):
            return "nan"
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, complex):
        return {"re": _sanitize(obj.real), "im": _sanitize(obj.imag)}
    return obj


def _to_json(payload: dict) -> str:
    return json.dumps(_sanitize(payload), sort_keys=True, indent=2,
                      allow_nan=False) + "\n"


def _flatten(obj, prefix: str = "", out: Optional[dict] = None) -> dict:
    """Dot-path projection of a nested payload onto scalar columns."""
    if out is None:
        out = {}
    if isinstance(obj, dict):
        for key in obj:
            _flatten(obj[key], prefix + str(key) + ".", out)
        return out
    if isinstance(obj, (list, tuple)):
        for i, item in enumerate(obj):
            _flatten(item, f"{prefix}{i}.", out)
        return out
    out[prefix[:-1]] = obj
    return out


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _to_csv(rows: List[dict], header: Optional[List[str]] = None) -> str:
    if header is None:
        header = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in header])
    return buf.getvalue()


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _interval_dict(iv: Interval) -> dict:
    return {"kind": iv.kind, "a": iv.a, "b": iv.b}


def load_schema(name: str) -> dict:
    """Load one of the shipped JSON schemas by subcommand name."""
    from importlib import resources

    path = resources.files("saext") / "schemas" / f"{name}.json"
    return json.loads(path.read_text())


# ---------------------------------------------------------------------------
# Subcommand runners
# ---------------------------------------------------------------------------

def _run_deficiency(args) -> dict:
    if args.op == "momentum":
        iv = args.interval or Interval.finite(0.0, 1.0)
        spec = OperatorSpec.momentum(iv, args.units)
    elif args.op == "hamiltonian":
        iv = args.interval or Interval.half_line()
        spec = OperatorSpec.free_hamiltonian(iv, args.units)
    else:
        iv = args.interval or Interval.half_line()
        spec = OperatorSpec.time_operator(iv.a, args.units)
    report = solve_deficiency(spec, lam=args.lam, n=args.grid_n or 10_001)
    return {
        "op": args.op,
        "interval": _interval_dict(spec.interval),
        "n_plus": report.n_plus,
        "n_minus": report.n_minus,
        "classification": report.classification,
        "param_dim": report.param_dim,
        "lambda": report.lam,
        "adjoint_residual": verify_deficiency_numerically(spec, report),
        "basis": [sol.tag for sol in report.basis()],
    }


def _run_extend(args) -> dict:
    if args.operator == "momentum":
        bc = momentum_bc_from_unitary(args.gamma)
    else:
        bc = halfline_bc_from_unitary(args.gamma)
    return {
        "gamma": float(args.gamma) % math.tau,
        "bc_variant": bc.variant,
        "value": bc.value,
        "dirichlet_limit": bool(bc.is_dirichlet_limit),
    }


def _run_spectrum(args) -> dict:
    grid_n = args.grid_n or 2001
    if args.op == "momentum":
        iv = args.interval or Interval.finite(0.0, 1.0)
        n_min = -5 if args.n_min is None else args.n_min
        n_max = 5 if args.n_max is None else args.n_max
        res = momentum_spectrum(args.theta, iv, range(n_min, n_max + 1), grid_n=grid_n)
        params = {"op": "momentum", "theta": args.theta,
                  "interval": _interval_dict(iv), "n_min": n_min, "n_max": n_max}
    elif args.op == "well":
        n_min = 1 if args.n_min is None else args.n_min
        n_max = 5 if args.n_max is None else args.n_max
        res = well_spectrum(args.a, range(n_min, n_max + 1), grid_n=grid_n)
        params = {"op": "well", "a": args.a, "n_min": n_min, "n_max": n_max}
    else:
        res = halfline_robin_spectrum(args.alpha, grid_n=args.grid_n)
        params = {"op": "robin", "alpha": args.alpha}
    out = res.to_json_dict()
    if res.continuous is not None:
        ks = np.linspace(0.1, 5.0, 25)
        out["continuous"]["phase_samples"] = [
            {"k": float(k), "phase": res.continuous.reflection_phase(float(k))}
            for k in ks
        ]
    return {"params": params, **out}


def _rows_spectrum(result: dict) -> List[dict]:
    return [{"n": lv["n"], "value": lv["value"]} for lv in result["discrete"]]


def _run_boundstate(args) -> dict:
    state = bound_state(args.alpha, x_max=args.x_max, grid_n=args.grid_n)
    if state is None:
        return {"alpha": args.alpha, "E": None, "bound_state": None,
                "reason": "alpha >= 0"}
    psi = state.psi
    return {
        "alpha": args.alpha,
        "E": state.energy,
        "reason": None,
        "bound_state": {
            "energy": state.energy,
            "x_max": float(psi.xs[-1]),
            "grid_n": len(psi),
            "norm": norm(psi),
        },
    }


def _run_scatter(args) -> dict:
    r = reflection_coefficient(args.k, args.alpha)
    return {
        "k": args.k,
        "alpha": args.alpha,
        "R": {"re": r.real, "im": r.imag},
        "modulus": abs(r),
        "phase": reflection_phase(args.k, args.alpha),
    }


def _run_anomaly(args) -> dict:
    report = anomaly_quadrature(args.alpha, t=args.t, grid_n=args.grid_n)
    return report.to_json_dict()


def _run_paradox(args) -> dict:
    if args.id == 1:
        report = eigenvector_commutator_demo(
            args.theta, args.n or 256, mode=args.mode, units=args.units)
    elif args.id == 2:
        report = trace_commutator_check(
            args.n or 8, args.trials,
            seed=0 if args.seed is None else args.seed, units=args.units)
    elif args.id == 3:
        report = commuting_observables_demo(
            args.a, args.n or 3, grid_n=args.grid_n or 10_001)
    else:
        report = hermiticity_defect_demo(args.l, args.n or 8)
    return report.to_json_dict()


def _run_classical(args) -> dict:
    v = PowerLawPotential(args.g, args.s)
    report = dilatation_drift_report(
        v, (args.q0, args.p0), args.t_end, tol=args.tol, samples=args.samples)
    return {
        "s": args.s,
        "g": args.g,
        "q0": args.q0,
        "p0": args.p0,
        "t_end": args.t_end,
        "drift": report.max_drift,
        "predicted_drift": report.predicted_drift,
        "deviation": report.max_deviation,
        "energy_drift": report.energy_drift,
        "symmetry_exact": scale_condition_residual(v).is_zero,
    }


def _bump_values(xs: np.ndarray, center: float, width: float) -> np.ndarray:
    u = (xs - center) / width
    out = np.zeros_like(xs, dtype=complex)
    inside = np.abs(u) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


def _geometry_connection(metric: str):
    if metric == "polar":
        def omega(r):
            with np.errstate(divide="ignore"):
                return 0.5 / r
        return omega, "1/(2r)"
    if metric == "spherical":
        def omega(r):
            with np.errstate(divide="ignore"):
                return 1.0 / r
        return omega, "1/r"
    return (lambda r: np.zeros_like(r)), "0"


def _run_geometry(args) -> dict:
    omega, label = _geometry_connection(args.metric)
    a, b = args.probe["a"], args.probe["b"]
    far_end = b + max(0.5 * (b - a), 0.25)
    xs = np.linspace(0.0, far_end, args.grid_n or 4001)
    f = GridFunction(xs, _bump_values(xs, 0.5 * (a + b), 0.5 * (b - a)), weight="r")
    defect = radial_symmetry_defect(omega, f, f)
    flat = GridFunction(xs, f.values, weight="1")
    return {
        "metric": args.metric,
        "connection": label,
        "probe": dict(args.probe),
        "defect": {"re": defect.real, "im": defect.imag},
        "commutator_sup": commutator_preservation_check(omega, f),
        "overlap_flat": inner_product(flat, flat).real,
    }


# ---------------------------------------------------------------------------
# Command table
# ---------------------------------------------------------------------------

_COMMANDS: Dict[str, dict] = {
    "deficiency": {
        "help": "deficiency indices and adjoint residual for a catalog operator",
        "args": [
            (("--op",), dict(choices=["momentum", "hamiltonian", "time"],
                             required=True, help="catalog operator")),
            (("--interval",), dict(type=_parse_interval, default=None,
                                   help="a,b with inf endpoints (default 0,1 "
                                        "for momentum, 0,inf otherwise)")),
            (("--lam",), dict(type=float, default=1.0,
                              help="probe scale lambda > 0 (default 1)")),
        ],
        "run": _run_deficiency,
    },
    "extend": {
        "help": "map a von Neumann phase gamma to its boundary condition",
        "args": [
            (("--operator",), dict(choices=["momentum", "hamiltonian"],
                                   required=True, help="extension family")),
            (("--gamma",), dict(type=float, required=True,
                                help="unitary phase in radians")),
        ],
        "run": _run_extend,
    },
    "spectrum": {
        "help": "discrete/continuous spectrum of a chosen operator",
        "args": [
            (("--op",), dict(choices=["momentum", "well", "robin"],
                             required=True, help="which spectrum")),
            (("--theta",), dict(type=float, default=0.0,
                                help="boundary phase for op=momentum")),
            (("--interval",), dict(type=_parse_interval, default=None,
                                   help="finite box for op=momentum (default 0,1)")),
            (("--n-min",), dict(type=int, default=None,
                                help="lowest level index (default -5 / 1)")),
            (("--n-max",), dict(type=int, default=None,
                                help="highest level index (default 5)")),
            (("--a",), dict(type=float, default=1.0,
                            help="well width for op=well (default 1)")),
            (("--alpha",), dict(type=float, default=-1.0,
                                help="Robin slope for op=robin (default -1)")),
        ],
        "run": _run_spectrum,
        "rows": _rows_spectrum,
        "csv_header": ["n", "value"],
    },
    "boundstate": {
        "help": "Robin half-line bound state (absent for alpha >= 0)",
        "args": [
            (("--alpha",), dict(type=float, required=True,
                                help="Robin slope psi'(0) = alpha psi(0)")),
            (("--x-max",), dict(type=float, default=None,
                                help="grid cutoff (default 35/|alpha|)")),
        ],
        "run": _run_boundstate,
    },
    "scatter": {
        "help": "reflection coefficient of the Robin half line",
        "args": [
            (("--k",), dict(type=float, required=True, help="wave number k > 0")),
            (("--alpha",), dict(type=float, required=True,
                                help="Robin slope (inf = Dirichlet)")),
        ],
        "run": _run_scatter,
    },
    "anomaly": {
        "help": "dilatation anomaly on the Robin bound state",
        "args": [
            (("--alpha",), dict(type=float, required=True,
                                help="Robin slope, alpha < 0")),
            (("--t",), dict(type=float, default=0.0,
                            help="explicit time in the dilatation (default 0)")),
        ],
        "run": _run_anomaly,
    },
    "paradox": {
        "help": "numerical demonstration of a textbook operator paradox",
        "args": [
            (("--id",), dict(type=int, choices=[1, 2, 3, 4], required=True,
                             help="1 eigenvector, 2 trace, 3 commuting, "
                                  "4 hermiticity")),
            (("--n",), dict(type=int, default=None,
                            help="size parameter (default 256/8/3/8 by id)")),
            (("--l",), dict(type=float, default=1.0,
                            help="interval length for id=4 (default 1)")),
            (("--theta",), dict(type=float, default=0.0,
                                help="boundary phase for id=1 (default 0)")),
            (("--mode",), dict(type=int, default=1,
                               help="eigenvector label for id=1 (default 1)")),
            (("--trials",), dict(type=int, default=100,
                                 help="random pairs for id=2 (default 100)")),
            (("--a",), dict(type=float, default=1.0,
                            help="box width for id=3 (default 1)")),
        ],
        "run": _run_paradox,
    },
    "classical": {
        "help": "dilatation drift along a power-law Hamiltonian flow",
        "args": [
            (("--s",), dict(type=float, required=True,
                            help="integer potential exponent")),
            (("--g",), dict(type=float, default=1.0,
                            help="coupling (default 1)")),
            (("--q0",), dict(type=float, default=1.0,
                             help="initial position (default 1)")),
            (("--p0",), dict(type=float, default=0.25,
                             help="initial momentum (default 0.25)")),
            (("--t-end",), dict(type=float, default=5.0,
                                help="integration horizon (default 5)")),
            (("--samples",), dict(type=int, default=4001,
                                  help="output samples (default 4001)")),
        ],
        "run": _run_classical,
    },
    "geometry": {
        "help": "radial symmetry defect and commutator check for a metric",
        "args": [
            (("--metric",), dict(choices=["polar", "spherical", "flat"],
                                 required=True, help="which measure")),
            (("--probe",), dict(type=_parse_probe,
                                default={"kind": "bump", "a": 1.0, "b": 2.0},
                                help="probe function bump:<a>,<b> (default "
                                     "bump:1,2)")),
        ],
        "run": _run_geometry,
    },
}

_COMMON_DESTS = {"fmt", "units", "tol", "grid_n", "seed", "out", "sweep", "help"}


def _dest_of(flags: tuple, kwargs: dict) -> str:
    if "dest" in kwargs:
        return kwargs["dest"]
    return flags[0].lstrip("-").replace("-", "_")


def _command_params(name: str, ns: argparse.Namespace) -> dict:
    params = {}
    for flags, kwargs in _COMMANDS[name]["args"]:
        dest = _dest_of(flags, kwargs)
        value = getattr(ns, dest)
        if isinstance(value, Interval):
            value = _interval_dict(value)
        params[dest] = value
    if ns.grid_n is not None:
        params["grid_n"] = ns.grid_n
    if ns.seed is not None:
        params["seed"] = ns.seed
    return params


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     help="emit JSON with a manifest (default)")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv",
                     help="emit a flat CSV projection instead")
    common.set_defaults(fmt="json")
    common.add_argument("--units", type=_parse_units, default=None,
                        metavar="hbar=<v>,two_m=<v>",
                        help="unit system (default hbar=1,two_m=1)")
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance override (default: SAEXT_TOL or the "
                             "subcommand default)")
    common.add_argument("--grid-n", type=int, default=None,
                        help="grid size override")
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed where randomness is used")
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write output to PATH instead of stdout")
    return common


def _target_parser(name: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=f"saext sweep {name}",
                                     parents=[_common_parser()])
    for flags, kwargs in _COMMANDS[name]["args"]:
        # a required flag may be supplied by the sweep axis instead;
        # _run_sweep re-checks that nothing is left unset
        relaxed = dict(kwargs, required=False) if kwargs.get("required") \
            else kwargs
        parser.add_argument(*flags, **relaxed)
    parser.add_argument("--sweep", action="append", type=_parse_sweep,
                        default=[], metavar="param=start:stop:count",
                        help="axis of the parameter grid (repeatable)")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="saext",
        description="Self-adjoint extensions of 1D quantum operators: "
                    "deficiency indices, boundary conditions, spectra, "
                    "paradox demos, the scale anomaly, and its classical "
                    "and geometric counterparts.",
    )
    parser.add_argument("--version", action="version",
                        version=f"saext {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="subcommand")
    common = _common_parser()
    for name, spec in _COMMANDS.items():
        p = sub.add_parser(name, help=spec["help"], parents=[common])
        for flags, kwargs in spec["args"]:
            p.add_argument(*flags, **kwargs)
    p_sweep = sub.add_parser(
        "sweep", help="run a subcommand over a cartesian parameter grid")
    p_sweep.add_argument("target", choices=sorted(_COMMANDS),
                         help="subcommand to sweep")
    p_sweep.add_argument("rest", nargs=argparse.REMAINDER,
                         help="target flags plus --sweep param=start:stop:count")
    return parser


def _finalize(ns: argparse.Namespace, command: str,
              parser: argparse.ArgumentParser) -> None:
    if ns.units is None:
        ns.units = UnitSystem()
    if ns.tol is None:
        env = os.environ.get("SAEXT_TOL")
        if env is not None:
            try:
                ns.tol = float(env)
            except ValueError:
                parser.error(f"SAEXT_TOL is not a number: {env!r}")
        else:
            ns.tol = _DEFAULT_TOL.get(command, 1e-6)


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def _run_sweep(target: str, tns: argparse.Namespace,
               tparser: argparse.ArgumentParser) -> dict:
    specs = tns.sweep
    if not specs:
        tparser.error("sweep needs at least one --sweep param=start:stop:count")
    valid = {_dest_of(flags, kwargs)
             for flags, kwargs in _COMMANDS[target]["args"]}
    swept = {name.replace("-", "_") for name, _, _, _ in specs}
    for name in swept:
        if name not in valid:
            tparser.error(f"unknown sweep parameter {name!r} for {target}")
    for flags, kwargs in _COMMANDS[target]["args"]:
        dest = _dest_of(flags, kwargs)
        if kwargs.get("required") and dest not in swept \
                and getattr(tns, dest) is None:
            tparser.error(f"{flags[0]} must be given or swept for {target}")
    total = 1
    for _, _, _, count in specs:
        total *= count
    if total > _SWEEP_LIMIT:
        raise SweepSizeError(
            f"sweep would evaluate {total} points (limit {_SWEEP_LIMIT})")
    axes = [np.linspace(start, stop, count) for _, start, stop, count in specs]
    runner = _COMMANDS[target]["run"]
    points = []
    for combo in itertools.product(*axes):
        pns = argparse.Namespace(**vars(tns))
        params = {}
        for (name, _, _, _), value in zip(specs, combo):
            setattr(pns, name.replace("-", "_"), float(value))
            params[name] = float(value)
        points.append({"params": params, "result": runner(pns)})
    return {"target": target, "count": len(points), "points": points}


def _rows_sweep(result: dict) -> List[dict]:
    rows = []
    for point in result["points"]:
        row = {f"param.{k}": v for k, v in point["params"].items()}
        row.update(_flatten(point["result"]))
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def main(argv: Optional[List[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    ns = parser.parse_args(argv)
    command = ns.command

    rows_fn: Optional[Callable[[dict], List[dict]]] = None
    csv_header: Optional[List[str]] = None
    out_path: Optional[str] = None
    t0 = time.perf_counter()
    try:
        if command == "sweep":
            tparser = _target_parser(ns.target)
            tns = tparser.parse_args(ns.rest)
            out_path = tns.out
            _finalize(tns, ns.target, tparser)
            result = _run_sweep(ns.target, tns, tparser)
            out_ns = tns
            params = {"target": ns.target,
                      "sweep": ["%s=%g:%g:%d" % spec for spec in tns.sweep],
                      **_command_params(ns.target, tns)}
            rows_fn = _rows_sweep
        else:
            out_path = ns.out
            _finalize(ns, command, parser)
            result = _COMMANDS[command]["run"](ns)
            out_ns = ns
            params = _command_params(command, ns)
            rows_fn = _COMMANDS[command].get("rows")
            csv_header = _COMMANDS[command].get("csv_header")
    except SaextError as exc:
        error = {"error": {"code": exc.code, "message": str(exc),
                           "context": {"command": command}}}
        _emit(_to_json(error), out_path)
        return 1
    except ValueError as exc:
        error = {"error": {"code": "invalid-value", "message": str(exc),
                           "context": {"command": command}}}
        _emit(_to_json(error), out_path)
        return 1

    if out_ns.fmt == "csv":
        rows = rows_fn(result) if rows_fn else [_flatten(result)]
        text = _to_csv(rows, header=csv_header)
    else:
        payload = {
            "manifest": {
                "argv": list(argv),
                "command": command,
                "params": params,
                "units": {"hbar": out_ns.units.hbar, "two_m": out_ns.units.two_m},
                "tolerances": {"tol": out_ns.tol},
                "version": __version__,
                "wall_time_s": time.perf_counter() - t0,
            },
            "result": result,
        }
        text = _to_json(payload)
    _emit(text, out_ns.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
