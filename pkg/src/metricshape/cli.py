"""Command line entry point: ``metricshape compute | verify | simplex | report``."""

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import (
    BudgetExceededError,
    DomainError,
    MetricShapeError,
    UnsupportedRegimeError,
)
from .invariants import compute_report
from .io import MatrixParseError, read_matrix
from .metric import Tolerances
from .serialize import to_csv, to_json, to_plotdata
from .solvers import SolverBudget
from .spaceform.double import double_radius
from .spaceform.models import KINDS, SIMPLEX_K_MAX, ModelSpaceSpec
from .spaceform.sampling import sample_model_space
from .spaceform.simplex import inradius, regular_simplex, solve_kn
from .spaceform.trig import law_of_cosines
from .theorems import (
    THEOREMS,
    check_extent_bound,
    check_packing_bound,
    check_toponogov_point,
    extent_rhs,
    theorem_g_fixture,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_REGIME = range(6)
STATUS_EXIT = {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}
FORMATS = {"compute": ("json", "csv", "plotdata"), "verify": ("json",),
           "simplex": ("json", "csv"), "report": ("json", "csv", "plotdata")}


class InputError(Exception):
    """Bad flags or flag combinations (exit code 1)."""


def parse_q_range(text):
    """'3' -> [3]; '2..5' -> [2, 3, 4, 5]; '2,4,6' -> [2, 4, 6]."""
    try:
        if ".." in text:
            lo, hi = (int(s) for s in text.split(".."))
            qs = list(range(lo, hi + 1))
        else:
            qs = [int(s) for s in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse q range {text!r}") from None
    if not qs:
        raise InputError(f"q range {text!r} is empty")
    return qs


@dataclass
class RunConfig:
    """Fully resolved settings of one run, embedded in every output."""

    command: str
    source: dict = None
    q_values: list = None
    objective: str = "average"
    method: str = "exact"
    budget: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    out: str = None
    format: str = "json"
    options: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def _add_space_flags(p):
    g = p.add_argument_group("space")
    g.add_argument("--matrix", help="CSV or JSON distance matrix")
    g.add_argument("--space", choices=KINDS, help="model space to sample")
    g.add_argument("--n", type=int, help="dimension")
    g.add_argument("--k", type=float, help="curvature")
    g.add_argument("--R", type=float, help="radius (ball, interval length, simplex circumradius)")
    g.add_argument("--N", type=int, default=200, help="number of sample points")
    g.add_argument("--seed", type=int, default=0, help="sampling seed")


def _add_solver_flags(p):
    g = p.add_argument_group("solver")
    g.add_argument("--q", default=None, help="q or range such as 2..5")
    g.add_argument("--objective", choices=("average", "minimum", "both"), default="average")
    g.add_argument("--method", choices=("exact", "greedy", "anneal"), default="exact")
    d = SolverBudget()
    g.add_argument("--max-nodes", type=int, default=d.max_nodes)
    g.add_argument("--restarts", type=int, default=d.restarts)
    g.add_argument("--anneal-steps", type=int, default=d.anneal_steps)
    g.add_argument("--initial-temp", type=float, default=d.initial_temp)
    g.add_argument("--cooling-rate", type=float, default=d.cooling_rate)
    g.add_argument("--solver-seed", type=int, default=d.seed)
    t = Tolerances()
    g.add_argument("--tol-metric", type=float, default=t.tol_metric)
    g.add_argument("--tol-value", type=float, default=t.tol_value)
    g.add_argument("--tol-root", type=float, default=t.tol_root)


def _add_output_flags(p, formats):
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=formats, default="json")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="metricshape",
                     description="Global shape invariants of metric spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="xt_q / pack_q and elementary invariants")
    _add_space_flags(p)
    _add_solver_flags(p)
    _add_output_flags(p, FORMATS["compute"])

    p = sub.add_parser("verify", help="check a comparison inequality")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    _add_space_flags(p)
    _add_solver_flags(p)
    p.add_argument("--compare-k", type=float, help="comparison curvature for D1")
    p.add_argument("--trials", type=int, default=1000, help="triangles for D1")
    _add_output_flags(p, FORMATS["verify"])

    p = sub.add_parser("simplex", help="regular simplex, inradius, k(n), double radius")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=float)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--solve-kn", action="store_true", help="solve r(n, k) = 1/2 for k")
    p.add_argument("--double-radius", action="store_true",
                   help="radius of the double, estimated on a grid")
    p.add_argument("--grid", type=int, default=None, help="grid subdivisions for --double-radius")
    p.add_argument("--tol-root", type=float, default=Tolerances().tol_root)
    _add_output_flags(p, FORMATS["simplex"])

    p = sub.add_parser("report", help="tabulate a JSON output of compute")
    p.add_argument("input", help="JSON file written by compute")
    _add_output_flags(p, FORMATS["report"])
    return parser


def _budget(args):
    return SolverBudget(max_nodes=args.max_nodes, restarts=args.restarts,
                        anneal_steps=args.anneal_steps, initial_temp=args.initial_temp,
                        cooling_rate=args.cooling_rate, seed=args.solver_seed)


def _tolerances(args):
    return Tolerances(tol_metric=args.tol_metric, tol_value=args.tol_value,
                      tol_root=args.tol_root)


def _spec(args, default_k=None):
    kind = args.space
    if args.n is None:
        raise InputError("--space needs --n")
    k = args.k
    if k is None:
        k = default_k if default_k is not None else (1.0 if kind in ("sphere", "projective")
                                                     else 0.0)
    R = args.R
    if R is None:
        R = math.pi if kind == "interval" else 1.0
    return ModelSpaceSpec(kind, args.n, k, R)


def _source(args):
    if (args.matrix is None) == (args.space is None):
        raise InputError("give exactly one of --matrix and --space")
    if args.matrix is not None:
        return {"matrix": args.matrix}
    return {"spec": _spec(args).to_dict(), "N": args.N, "seed": args.seed}


def _load_space(args, tol):
    if args.matrix is not None:
        return read_matrix(args.matrix, tol)
    return sample_model_space(_spec(args), args.N, args.seed, tol)


def _config(args, **extra):
    cfg = RunConfig(command=args.command, out=args.out, format=args.format)
    if hasattr(args, "max_nodes"):
        cfg.budget = _budget(args).to_dict()
        cfg.tolerances = _tolerances(args).to_dict()
        cfg.objective = args.objective
        cfg.method = args.method
    for key, value in extra.items():
        setattr(cfg, key, value)
    return cfg


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_compute(args):
    if args.q is None:
        raise InputError("compute needs --q")
    qs = parse_q_range(args.q)
    tol = _tolerances(args)
    cfg = _config(args, source=_source(args), q_values=qs)
    space = _load_space(args, tol)
    objectives = ("average", "minimum") if args.objective == "both" else (args.objective,)
    report = compute_report(space, qs, objectives, args.method, _budget(args))
    doc = report.to_dict()
    doc["config"] = cfg.to_dict()
    if args.format == "json":
        text = to_json(doc)
    elif args.format == "csv":
        text = _report_csv(doc)
    else:
        text = _report_plotdata(doc)
    _emit(text, args.out)
    return EXIT_BUDGET if report.budget_exhausted else EXIT_OK


def _report_csv(doc):
    rows = []
    for q in doc["q_values"]:
        key = str(q)
        rows.append([q, doc["xt"].get(key), doc["pack"].get(key),
                     doc["tags"].get("xt", {}).get(key), doc["tags"].get("pack", {}).get(key)])
    return to_csv(["q", "xt", "pack", "xt_method", "pack_method"], rows)


def _report_plotdata(doc):
    series = {}
    for name in ("xt", "pack"):
        if doc[name]:
            series[name] = [(int(q), v) for q, v in doc[name].items()]
    return to_plotdata(series)


def _verify_hypotheses(args):
    """(n, k, R, q) asserted for star / A / B, checked before loading any space."""
    n = args.n
    if n is None:
        raise InputError("--n is required")
    q = parse_q_range(args.q)[0] if args.q else None
    if args.theorem == "A":
        return n, 1.0, math.pi, q if q is not None else n + 1
    if args.theorem == "B":
        if args.k is None:
            raise InputError("--theorem B needs --k (at most k(n) for the sharp bound)")
        return n, args.k, 1.0 if args.R is None else args.R, n + 1 if q is None else q
    if args.k is None or args.R is None or q is None:
        raise InputError("--theorem star needs --k, --R and --q")
    return n, args.k, args.R, q


def cmd_verify(args):
    tol = _tolerances(args)
    budget = _budget(args)
    th = args.theorem
    if th in ("star", "A", "B"):
        n, k, R, q = _verify_hypotheses(args)
        extent_rhs(n, k, R, q)
        cfg = _config(args, source=_source(args), q_values=[q],
                      options={"theorem": th, "n": n, "k": k, "R": R})
        space = _load_space(args, tol)
        verdict = check_extent_bound(space, n, k, R, q, args.method, budget, tol, theorem=th)
    elif th == "E":
        if args.n is None:
            raise InputError("--theorem E needs --n")
        cfg = _config(args, source=_source(args), q_values=[args.n + 2],
                      options={"theorem": th, "n": args.n})
        space = _load_space(args, tol)
        verdict = check_packing_bound(space, args.n, None, args.method, budget, tol)
    elif th == "D1":
        if args.space is None:
            raise InputError("--theorem D1 needs --space")
        spec = _spec(args)
        ck = spec.k if args.compare_k is None else args.compare_k
        cfg = _config(args, source={"spec": spec.to_dict(), "seed": args.seed},
                      options={"theorem": th, "compare_k": ck, "trials": args.trials})
        verdict = check_toponogov_point(spec, ck, args.trials, args.seed, tol)
    else:
        if args.n is None:
            raise InputError("--theorem G-fixture needs --n")
        cfg = _config(args, source={"spec": {"kind": "projective", "n": args.n, "k": 1.0},
                                    "N": args.N, "seed": args.seed},
                      options={"theorem": th})
        verdict = theorem_g_fixture(args.n, args.N, args.seed, args.method, budget)
    doc = verdict.to_dict()
    doc["config"] = cfg.to_dict()
    _emit(to_json(doc), args.out)
    return STATUS_EXIT[verdict.status]


def cmd_simplex(args):
    doc = {"schema_version": 1, "kind": "simplex_report", "n": args.n}
    k = args.k
    if args.solve_kn:
        kn = solve_kn(args.n, args.tol_root)
        doc["k_n"] = kn
        if k is None:
            k = kn
    if k is None:
        raise InputError("simplex needs --k or --solve-kn")
    if args.k is None and args.R == 1.0 and k >= SIMPLEX_K_MAX:
        # k(n) for n >= 3 lies past the uniqueness bound but inside the domain of r(n, .)
        edge = law_of_cosines(k, 1.0, 1.0, math.acos(-1.0 / args.n))
        doc.update({"k": k, "R": 1.0, "edge_length": edge,
                    "inradius": inradius(args.n, k, strict=False), "unique_simplex": False})
    else:
        geo = regular_simplex(args.n, k, args.R)
        doc.update({"k": k, "R": args.R, "edge_length": geo.edge_length,
                    "inradius": geo.inradius, "unique_simplex": True})
    if args.double_radius:
        if args.R != 1.0:
            raise InputError("--double-radius is defined for R = 1")
        rad, resolution = double_radius(args.n, k, args.grid)
        doc["double_radius"] = rad
        doc["double_radius_resolution"] = resolution
    doc["config"] = RunConfig(command="simplex", out=args.out, format=args.format,
                              options={"n": args.n, "k": args.k, "R": args.R,
                                       "solve_kn": args.solve_kn,
                                       "double_radius": args.double_radius,
                                       "grid": args.grid, "tol_root": args.tol_root}).to_dict()
    if args.format == "json":
        text = to_json(doc)
    else:
        keys = [key for key in doc if key not in ("config", "kind")]
        text = to_csv(keys, [[doc[key] for key in keys]])
    _emit(text, args.out)
    return EXIT_OK


def cmd_report(args):
    try:
        doc = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read {args.input}: {err}") from None
    if doc.get("kind") != "invariant_report":
        raise InputError(f"{args.input} is not a compute report")
    if args.format == "json":
        summary = {key: doc[key] for key in ("schema_version", "provenance", "n_points", "diam",
                                              "rad", "excess", "covering_radius", "xt", "pack",
                                              "extent")}
        summary["config"] = doc.get("config")
        text = to_json(summary)
    elif args.format == "csv":
        text = _report_csv(doc)
    else:
        text = _report_plotdata(doc)
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "simplex": cmd_simplex,
            "report": cmd_report}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UnsupportedRegimeError as err:
        print(f"UnsupportedRegime: {err}", file=sys.stderr)
        return EXIT_REGIME
    except BudgetExceededError as err:
        print(f"BudgetExceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except MatrixParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, DomainError, MetricShapeError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
