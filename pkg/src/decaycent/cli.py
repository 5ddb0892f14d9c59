"""Command-line surface.

Subcommands: ``compute`` (centrality report for a graph file), ``compare``
(pairwise ordering report), ``simulate`` (the Monte-Carlo experiment), and
``check`` (randomized property verification).

Exit codes: 0 success, 1 usage error, 2 data error, 3 property-check
failure.  ``simulate`` refuses to run without an explicit seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .centrality import DeltaGrid, centrality_table, dc_difference_coeffs
from .generation import DEFAULT_MAX_REJECTS, RejectionLimitError
from .graph import DisconnectedGraphError, is_connected
from .io import (
    GraphParseError,
    centrality_csv,
    centrality_payload,
    fmt_float,
    jsonable,
    read_graph,
    with_envelope,
)
from .ordering import (
    check_farness_dominance,
    check_high_delta_conditions,
    check_low_delta_conditions,
    check_profile_dominance,
    lex_compare,
    lex_compare_cvec,
    maximizer_sets,
)
from .simulation import SimulationConfig, run_experiment
from .verification import run_all_checks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CHECK = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems via exit code 1."""

    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="decaycent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="centrality table for a graph file")
    p_compute.add_argument("--graph", required=True, help="edge-list or JSON graph file")
    p_compute.add_argument("--format", default="auto", choices=["auto", "edgelist", "json"])
    p_compute.add_argument("--grid-points", type=int, default=99)
    p_compute.add_argument("--out", help="CSV output path (default: stdout)")
    p_compute.add_argument("--json", dest="json_out", help="JSON report path")
    p_compute.add_argument("--full", action="store_true",
                           help="include profiles and signed vectors in the JSON report")

    p_compare = sub.add_parser("compare", help="pairwise ordering report")
    p_compare.add_argument("--graph", required=True)
    p_compare.add_argument("--format", default="auto", choices=["auto", "edgelist", "json"])
    p_compare.add_argument("-i", type=int, required=True)
    p_compare.add_argument("-j", type=int, required=True)
    p_compare.add_argument("--grid-points", type=int, default=99)
    p_compare.add_argument("--out", help="JSON output path (default: stdout)")

    p_sim = sub.add_parser("simulate", help="connected G(n,p) maximizer study")
    p_sim.add_argument("--config", help="key=value config file; flags override")
    p_sim.add_argument("--n", type=int)
    p_sim.add_argument("--p", type=float)
    p_sim.add_argument("--trials", type=int)
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--grid-points", type=int)
    p_sim.add_argument("--out-dir")
    p_sim.add_argument("--workers", type=int)
    p_sim.add_argument("--max-rejects", type=int)

    p_check = sub.add_parser("check", help="randomized property verification")
    p_check.add_argument("--n-max", type=int, default=12)
    p_check.add_argument("--graphs", type=int, default=200)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--out", help="JSON report path")

    return parser


def _load_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


_SIM_KEYS = {
    "n": int,
    "p": float,
    "trials": int,
    "seed": int,
    "grid_points": int,
    "out_dir": str,
    "workers": int,
    "max_rejects": int,
}


def _resolve_sim_settings(args) -> tuple[SimulationConfig, str]:
    settings: dict = {}
    if args.config:
        raw = _load_config_file(args.config)
        for key, value in raw.items():
            if key not in _SIM_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            settings[key] = _SIM_KEYS[key](value)
    for key in _SIM_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    for required in ("n", "p", "trials", "out_dir"):
        if required not in settings:
            raise UsageError(f"simulate needs --{required.replace('_', '-')} "
                             "(flag or config file)")
    if "seed" not in settings:
        raise UsageError("simulate requires an explicit --seed; "
                         "implicit nondeterminism is not allowed")
    out_dir = settings.pop("out_dir")
    settings.setdefault("grid_points", 99)
    settings.setdefault("workers", 1)
    settings.setdefault("max_rejects", DEFAULT_MAX_REJECTS)
    return SimulationConfig(**settings), out_dir


def _cmd_compute(args) -> int:
    g = read_graph(args.graph, fmt=args.format)
    if not is_connected(g):
        raise DisconnectedGraphError(
            f"{args.graph}: graph is disconnected; centrality needs a connected graph"
        )
    grid = DeltaGrid.uniform(args.grid_points)
    table = centrality_table(g)
    sets = maximizer_sets(g, grid)
    csv_text = centrality_csv(table, grid)
    if args.out:
        Path(args.out).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.json_out:
        payload = centrality_payload(table, grid, sets, full=args.full)
        report = with_envelope(
            {"command": "compute", "graph": str(args.graph),
             "grid_points": args.grid_points, "full": bool(args.full)},
            payload,
        )
        Path(args.json_out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_compare(args) -> int:
    g = read_graph(args.graph, fmt=args.format)
    i, j = args.i, args.j
    for node in (i, j):
        if not (0 <= node < g.n):
            raise ValueError(f"unknown node id {node} (graph has nodes 0..{g.n - 1})")
    if i == j:
        raise ValueError("compare needs two distinct nodes")
    if not is_connected(g):
        raise DisconnectedGraphError(f"{args.graph}: graph is disconnected")
    grid = DeltaGrid.uniform(args.grid_points)
    table = centrality_table(g)
    pi, pj = table.profiles[i], table.profiles[j]
    fi, fj = table.fvecs[i], table.fvecs[j]
    avec, bvec = dc_difference_coeffs(pi, pj)
    curve = [
        table.decay(i, d) - table.decay(j, d) for d in grid.values
    ]
    low = check_low_delta_conditions(pi, pj)
    high = check_high_delta_conditions(fi, fj)
    payload = {
        "nodes": {"i": i, "j": j},
        "profiles": {"i": list(pi.counts), "j": list(pj.counts)},
        "fvecs": {"i": list(fi), "j": list(fj)},
        "verdicts": {
            "lex_profile": lex_compare(pi.counts, pj.counts),
            "lex_cvec": lex_compare_cvec(fi, fj),
            "profile_dominance": check_profile_dominance(pi, pj),
            "farness_dominance": check_farness_dominance(fi, fj),
        },
        "sufficient_conditions": {
            "low_delta": {"applicable": low.applicable,
                          "satisfied": sorted(low.satisfied)},
            "high_delta": {"applicable": high.applicable,
                           "satisfied": sorted(high.satisfied)},
        },
        "difference_coeffs": {"avec": list(avec), "bvec": list(bvec)},
        "dc_difference_curve": {
            "delta": [float(d) for d in grid.values],
            "difference": curve,
        },
    }
    report = with_envelope(
        {"command": "compare", "graph": str(args.graph), "i": i, "j": j,
         "grid_points": args.grid_points},
        payload,
    )
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config, out_dir = _resolve_sim_settings(args)
    result = run_experiment(config, out_dir)
    agg = result.aggregate
    print(f"trials: {agg.trials} succeeded, {len(result.failed_trials)} failed")
    print(f"deg/clos sets intersect: {agg.count_intersect}")
    print(f"decay escapes the intersection somewhere: "
          f"{agg.count_intersect_dc_escapes}")
    print(f"outputs: {result.records_path}, {result.aggregate_path}, "
          f"{result.summary_path}")
    return EXIT_OK


def _cmd_check(args) -> int:
    results = run_all_checks(n_max=args.n_max, graphs=args.graphs, seed=args.seed)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.cases} cases, "
              f"{len(res.failures)} failures")
        for failure in res.failures:
            print(f"    counterexample: {json.dumps(jsonable(failure), sort_keys=True)}")
    if args.out:
        report = with_envelope(
            {"command": "check", "n_max": args.n_max, "graphs": args.graphs,
             "seed": args.seed},
            {"properties": [
                {"name": r.name, "passed": r.passed, "cases": r.cases,
                 "failures": r.failures}
                for r in results
            ]},
        )
        Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "compare":
            return _cmd_compare(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "check":
            return _cmd_check(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphParseError, DisconnectedGraphError, RejectionLimitError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
