"""Command-line front end.

Subcommands: ``simulate``, ``sweep``, ``fit``, ``table``, ``experiment``.
Data goes to stdout as CSV (default) or JSON. Numbers are printed with six
decimals, angles in radians. CSV summary lines start with ``#``.
Diagnostics go to stderr.

Exit codes: 0 success, 2 usage, 3 infeasible fit, 4 unsupported dimension,
5 no ordering-consistent phase assignment.
"""
import argparse
import json
import math
import sys
import warnings

import numpy as np

from grovermem import analytic
from grovermem.errors import BelowInitialError, FixtureError, GroverError, InfeasibleTargetError, UnsupportedDimensionError
from grovermem.gates import SearchParams, is_power_of_two, run_search
from grovermem.memorymodel import builtin_experiment, load_fixture, reproduce_table, simulate_participants
from grovermem.phasefit import feasible_max_probability, fit_phase

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_DIMENSION = 4
EXIT_NO_ORDERING = 5

TWO_PI = 2.0 * math.pi

ENGINES = {
    "statevector": "statevector",
    "closed-form": "closed-form",
    "scaled": "scaled",
    # accepted aliases
    "eq3": "closed-form",
    "appendix": "scaled",
}


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.6f}"


class _Out:
    def __init__(self, stream):
        self.stream = stream

    def line(self, text=""):
        self.stream.write(text + "\n")

    def csv(self, header, rows):
        self.line(",".join(header))
        for row in rows:
            self.line(",".join(v if isinstance(v, str) else fmt(v) for v in row))

    def json(self, obj):
        self.line(json.dumps(obj, indent=2))


def _jsonable(x):
    if isinstance(x, (float, np.floating)):
        return float(fmt(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _records(header, rows):
    return [{h: _jsonable(v) for h, v in zip(header, row)} for row in rows]


def _engine(value: str) -> str:
    try:
        return ENGINES[value]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown engine {value!r}; choose from {sorted(ENGINES)}") from None


def _probability_trace(args) -> list[float]:
    if args.engine == "closed-form":
        return [analytic.success_probability(args.n, t, args.phi) for t in range(args.j + 1)]
    if args.engine == "scaled":
        return [analytic.success_probability_scaled(args.n, t, args.theta) for t in range(args.j + 1)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        trace = run_search(
            SearchParams(n=args.n, marked=args.marked, phi=args.phi, theta=args.theta, j=args.j),
            explicit_circuit=args.explicit_circuit,
        )
    return [float(p) for p in trace.probabilities]


def cmd_simulate(args, out: _Out) -> int:
    if args.theta is None:
        args.theta = args.phi
    if not 0 <= args.marked < args.n:
        raise _UsageError(f"--marked must be in [0, {args.n}), got {args.marked}")
    if args.engine == "statevector" and args.explicit_circuit and not is_power_of_two(args.n):
        print(f"error: explicit Walsh-Hadamard circuit needs N = 2**k, got N={args.n}", file=sys.stderr)
        return EXIT_DIMENSION
    matched = args.theta == args.phi
    if not matched:
        print(f"warning: phase mismatch theta={args.theta} != phi={args.phi}", file=sys.stderr)
    probs = _probability_trace(args)
    status = analytic.classify_cooking(args.n, args.j, args.phi)
    header = ["iteration", "p"]
    rows = [(t, p) for t, p in enumerate(probs)]
    summary = {
        "engine": args.engine,
        "n": args.n,
        "j": args.j,
        "phi": args.phi,
        "theta": args.theta,
        "marked": args.marked,
        "final_p": probs[-1],
        "status": str(status),
        "phase_matched": matched,
        "j_opt": analytic.j_opt_exact(args.n, args.phi),
    }
    if args.format == "json":
        out.json({"trace": _records(header, rows), **{k: _jsonable(v) for k, v in summary.items()}})
    else:
        out.csv(header, rows)
        out.line(f"# final p={fmt(probs[-1])} status={status} j_opt={fmt(summary['j_opt'])}")
        out.line(f"# engine={args.engine} n={args.n} j={args.j} phi={fmt(args.phi)} theta={fmt(args.theta)} "
                 f"marked={args.marked} phase_matched={str(matched).lower()}")
    return EXIT_OK


def phi_grid(start: float, end: float, step: float) -> np.ndarray:
    """Points ``start + k*step`` strictly below ``end``."""
    count = int(math.ceil((end - start) / step)) + 1
    grid = start + step * np.arange(count)
    return grid[grid < end - 1e-12]


def sweep_rows(n: int, js, grid, engine: str):
    rows = []
    for j in js:
        for phi in grid:
            phi = float(phi)
            if engine == "closed-form":
                p = analytic.success_probability(n, j, phi)
            elif engine == "scaled":
                p = analytic.success_probability_scaled(n, j, phi)
            else:
                p = run_search(SearchParams(n=n, marked=0, phi=phi, j=j)).final_probability
            rows.append((phi, j, n, p))
    return rows


def cmd_sweep(args, out: _Out) -> int:
    if args.phi_step <= 0:
        raise _UsageError("--phi-step must be positive")
    if not (0.0 < args.phi_start < args.phi_end <= TWO_PI):
        raise _UsageError("need 0 < --phi-start < --phi-end <= 2*pi")
    if any(j < 0 for j in args.j):
        raise _UsageError("--j values must be >= 0")
    grid = phi_grid(args.phi_start, args.phi_end, args.phi_step)
    header = ["phi", "j", "n", "p"]
    rows = sweep_rows(args.n, args.j, grid, args.engine)
    if args.format == "json":
        out.json(_records(header, rows))
    else:
        out.csv(header, rows)
    return EXIT_OK


def cmd_fit(args, out: _Out) -> int:
    ceiling = feasible_max_probability(args.n, args.j)
    try:
        fit = fit_phase(args.p, args.n, args.j)
    except BelowInitialError as exc:
        print(f"error: {exc} (feasible maximum {fmt(ceiling)})", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InfeasibleTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    header = ["branch", "phi", "residual"]
    rows = [(i, phi, f"{r:.3e}") for i, (phi, r) in enumerate(zip(fit.branches, fit.residuals))]
    if args.format == "json":
        out.json({
            "target_p": args.p, "n": args.n, "j": args.j, "feasible_max": _jsonable(ceiling),
            "branches": [{"branch": i, "phi": _jsonable(phi), "residual": r}
                         for i, (phi, r) in enumerate(zip(fit.branches, fit.residuals))],
        })
    else:
        out.csv(header, rows)
        out.line(f"# target_p={fmt(args.p)} n={args.n} j={args.j} feasible_max={fmt(ceiling)}")
    return EXIT_OK


def _load_table(args):
    if args.fixture is None:
        return builtin_experiment()
    return load_fixture(args.fixture)


def _reject_verbal(args):
    if getattr(args, "include_verbal", False):
        raise _UsageError("--include-verbal is not implemented: only non-verbal recognition data are modelled")


def cmd_table(args, out: _Out) -> int:
    _reject_verbal(args)
    table = _load_table(args)
    try:
        report = reproduce_table(table)
    except InfeasibleTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    header = ["cell", "strategy", "emotion", "observed_p", "participants",
              "branches", "selected_phi", "reference_phase", "abs_diff"]
    rows = []
    for r in report.rows:
        c = r.condition
        rows.append((c.label, c.strategy.value, c.emotion.value, c.observed_p, c.participants,
                     ";".join(fmt(b) for b in r.fit.branches), r.selected, c.reference_phase, r.deviation))
    if args.format == "json":
        out.json({
            "n": table.model_n, "j": table.model_j,
            "rows": [{**rec, "branches": [_jsonable(b) for b in r.fit.branches]}
                     for rec, r in zip(_records(header, rows), report.rows)],
            "consistent_assignments": len(report.assignments),
            "candidates": report.n_candidates,
            "assignments": [
                {"preferred": pref, "phases": {f"{k[0].value}/{k[1].value}": _jsonable(v) for k, v in a.items()}}
                for a, pref in zip(report.assignments, report.preferred)
            ],
        })
    else:
        out.csv(header, rows)
        out.line(f"# n={table.model_n} j={table.model_j} consistent_assignments={len(report.assignments)} "
                 f"of {report.n_candidates} preferred_high_watch_above_pi={sum(report.preferred)}")
        if args.all:
            labels = [c.label for c in table]
            for a, pref in zip(report.assignments, report.preferred):
                cells = " ".join(f"{lab}={fmt(a[c.key])}" for lab, c in zip(labels, table))
                out.line(f"# assignment {cells} preferred={str(pref).lower()}")
    if not report.consistent:
        print("error: no branch assignment satisfies the strategy ordering", file=sys.stderr)
        return EXIT_NO_ORDERING
    return EXIT_OK


def cmd_experiment(args, out: _Out) -> int:
    _reject_verbal(args)
    if args.trials_per_cell is not None and args.trials_per_cell < 1:
        raise _UsageError("--trials-per-cell must be >= 1")
    table = _load_table(args)
    try:
        cells = simulate_participants(table, trials_per_cell=args.trials_per_cell, seed=args.seed)
    except InfeasibleTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if any(c.phase_source != "fitted" for c in cells):
        print("warning: no ordering-consistent fit; using reference phases", file=sys.stderr)
    header = ["cell", "strategy", "emotion", "phi", "phase_source", "model_p", "trials", "successes", "frequency"]
    rows = [(c.condition.label, c.condition.strategy.value, c.condition.emotion.value, c.phase, c.phase_source,
             c.model_p, c.trials, c.successes, c.frequency) for c in cells]
    if args.format == "json":
        out.json(_records(header, rows))
    else:
        out.csv(header, rows)
        out.line(f"# seed={args.seed} n={table.model_n} j={table.model_j}")
    return EXIT_OK


class _UsageError(Exception):
    pass


def _positive_n(value):
    n = int(value)
    if n < 2:
        raise argparse.ArgumentTypeError(f"N must be >= 2, got {n}")
    return n


def _nonneg_int(value):
    j = int(value)
    if j < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {j}")
    return j


def _phase(value):
    phi = float(value)
    if not 0.0 < phi < TWO_PI:
        raise argparse.ArgumentTypeError(f"phase must lie in (0, 2*pi), got {phi}")
    return phi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grovermem", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("simulate", help="run one search and print its probability trace")
    p.add_argument("--n", type=_positive_n, required=True)
    p.add_argument("--j", type=_nonneg_int, required=True)
    p.add_argument("--phi", type=_phase, required=True)
    p.add_argument("--theta", type=_phase, default=None, help="marked-item phase (default: phi)")
    p.add_argument("--marked", type=int, default=0)
    p.add_argument("--engine", type=_engine, default="statevector",
                   help="statevector | closed-form | scaled")
    p.add_argument("--explicit-circuit", action="store_true",
                   help="build the diffusion from Walsh-Hadamard gates (needs N = 2**k)")
    add_format(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="success probability on a phase grid")
    p.add_argument("--n", type=_positive_n, default=80)
    p.add_argument("--j", type=int, nargs="+", default=[3, 7, 12])
    p.add_argument("--phi-start", type=float, default=0.01)
    p.add_argument("--phi-end", type=float, default=TWO_PI)
    p.add_argument("--phi-step", type=float, default=0.01)
    p.add_argument("--engine", type=_engine, default="closed-form",
                   help="statevector | closed-form | scaled")
    add_format(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", help="phases reproducing a target probability")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=_positive_n, required=True)
    p.add_argument("--j", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_fit)

    for name, func, helptext in (
        ("table", cmd_table, "fit every condition and enumerate ordering-consistent assignments"),
        ("experiment", cmd_experiment, "sample synthetic participants from the fitted model"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--fixture", default=None, help="experiment table file (default: built-in data)")
        p.add_argument("--include-verbal", action="store_true", help=argparse.SUPPRESS)
        add_format(p)
        p.set_defaults(func=func)
        if name == "table":
            p.add_argument("--all", action="store_true", help="also list every consistent assignment")
        else:
            p.add_argument("--seed", type=int, required=True)
            p.add_argument("--trials-per-cell", type=int, default=None,
                           help="default: participants x 9 slides")
    return parser


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "fit" and args.j < 1:
        parser.print_usage(sys.stderr)
        print("error: fit needs --j >= 1", file=sys.stderr)
        return EXIT_USAGE
    out = _Out(stdout if stdout is not None else sys.stdout)
    try:
        return args.func(args, out)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixtureError as exc:
        print(f"error: malformed fixture: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except GroverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
