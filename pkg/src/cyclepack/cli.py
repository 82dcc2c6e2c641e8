"""Command-line interface.

Exit codes for ``solve``: 0 a verified packing was found, 2 infeasibility was
certified by the exact oracle, 3 the search was inconclusive, 1 bad input.
Other subcommands exit 0 on a clean run and 1 on errors or violations.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from .graphs import GraphError, gen_complete, gen_random_mindeg, gen_sharpness, parse_graph, serialize_graph
from .harness import ConfigError, TrialConfig, run_exhaustive, run_hunt, run_sharpness, run_trials
from .packer import DEFAULT_BUDGET, DEFAULT_RESTARTS, INFEASIBLE, MOVE_KINDS, PACKED, pack
from .profiles import ProfileError, make_profile
from .verify import check_hypotheses, verify_packing

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_UNKNOWN = 3


def _profile_arg(parser: argparse.ArgumentParser, default_mode: str = "theorem") -> None:
    parser.add_argument("--profile", required=True,
                        help="comma-separated even cycle lengths, e.g. 6,6,8")
    parser.add_argument("--mode", choices=["theorem", "conjecture"], default=default_mode,
                        help=f"length floor: theorem >=6, conjecture >=4 (default {default_mode})")


def _parse_profile(args):
    try:
        lengths = [int(part) for part in args.profile.split(",") if part.strip()]
    except ValueError:
        raise ProfileError(f"profile {args.profile!r} is not a comma-separated integer list")
    return make_profile(lengths, args.mode)


def _emit(summary: dict, as_json: bool, render) -> None:
    if as_json:
        print(json.dumps(summary, indent=2))
    else:
        render(summary)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclepack",
        description="Pack vertex-disjoint long even cycles in bipartite graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a single instance from a graph file")
    p.add_argument("--graph", required=True, help="graph file path")
    _profile_arg(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-limit", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("trials", help="seeded random-instance campaign")
    p.add_argument("--side", type=int, required=True)
    p.add_argument("--delta", type=int, default=None,
                   help="minimum degree of generated instances (default: profile threshold)")
    _profile_arg(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--fill-p", type=float, default=0.5)
    p.add_argument("--oracle-limit", type=int, default=None)
    p.add_argument("--csv", default=None, help="write per-trial rows to this CSV file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("exhaustive", help="check every bipartite graph at a tiny side size")
    p.add_argument("--side", type=int, required=True)
    _profile_arg(p)
    p.add_argument("--force", action="store_true", help="lift the default side cap")
    p.add_argument("--oracle-limit", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sharpness", help="certify the tight construction is unpackable")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oracle-limit", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hunt", help="search for counterexample candidates in relaxed mode")
    p.add_argument("--side", type=int, required=True)
    _profile_arg(p, default_mode="conjecture")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="directory for counterexample files")
    p.add_argument("--fill-p", type=float, default=0.5)
    p.add_argument("--oracle-limit", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="write an instance file")
    gsub = p.add_subparsers(dest="generator", required=True)
    q = gsub.add_parser("complete", help="complete bipartite graph K_{m,m}")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--out", required=True)
    q = gsub.add_parser("random", help="seeded random graph with a min-degree floor")
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--y", type=int, required=True)
    q.add_argument("--delta", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--fill-p", type=float, default=0.5)
    q.add_argument("--out", required=True)
    q = gsub.add_parser("sharpness", help="the tight 4k+2-vertex construction")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--out", required=True)
    return parser


# -- rendering ---------------------------------------------------------------


def _render_report(report_dict: dict) -> None:
    for check in report_dict["checks"]:
        mark = "PASS" if check["pass"] else "FAIL"
        print(f"  [{mark}] {check['name']}: {check['detail']}")


def _render_solve(summary: dict) -> None:
    print(f"status: {summary['status']}")
    if summary.get("packing"):
        for i, cyc in enumerate(summary["packing"]):
            print(f"  cycle {i} (length {len(cyc)}): {' '.join(map(str, cyc))}")
    _render_report(summary["report"])
    print(f"moves: {summary['moves']}  oracle_used: {summary['oracle_used']}")


def _render_trials(summary: dict) -> None:
    cfg = summary["config"]
    agg = summary["aggregates"]
    print(
        f"trials: side {cfg['side_size']}, delta {cfg['delta']}, profile {cfg['profile']}, "
        f"{cfg['trials']} trials, seed {cfg['seed']}"
    )
    print(f"  success rate     {agg['success_rate']:.4f}")
    for outcome, count in agg["outcomes"].items():
        print(f"  {outcome:<16} {count}")
    print(f"  oracle fallbacks {agg['oracle_fallbacks']}")
    print(f"  violations       {agg['theorem_violations']}")
    print(f"  moves            {agg['move_histogram']}")
    print(f"  mean time        {summary['timing']['mean_s'] * 1000:.2f} ms")


def _render_exhaustive(summary: dict) -> None:
    print(
        f"exhaustive: side {summary['config']['side']}, profile {summary['config']['profile']}, "
        f"threshold {summary['config']['threshold']}"
    )
    print(f"  graph space          {summary['space_size']}")
    print(f"  hypothesis satisfied {summary['hypothesis_satisfying']}")
    print(f"  packed               {summary['packed']}")
    print(f"  violations           {len(summary['violations'])}")


def _render_sharpness(summary: dict) -> None:
    print(
        f"sharpness k={summary['config']['k']}: {summary['vertices']} vertices, "
        f"min degree {summary['min_degree']} = threshold {summary['threshold']} - 1"
    )
    print(f"  profile {summary['profile']}  verdict: {summary['verdict']}")
    print(f"  ok: {summary['ok']}")


def _render_hunt(summary: dict) -> None:
    cfg = summary["config"]
    print(f"hunt: side {cfg['side']}, profile {cfg['profile']} ({cfg['mode']}), {cfg['trials']} trials")
    print(f"  hypothesis-satisfying instances {summary['hypothesis_satisfying']}")
    print(f"  counterexample candidates       {summary['counterexample_count']}")
    for hit in summary["counterexamples"]:
        print(f"    trial {hit['trial']} -> {hit['graph_file']}")


# -- commands ------------------------------------------------------------------


def _cmd_solve(args) -> int:
    profile = _parse_profile(args)
    try:
        with open(args.graph, "r", encoding="ascii") as fh:
            g = parse_graph(fh.read())
    except OSError as exc:
        print(f"error: cannot read {args.graph}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = pack(
        g,
        profile,
        budget=args.budget,
        seed=args.seed,
        oracle_limit=args.oracle_limit,
        restarts=args.restarts,
    )
    if result.status == PACKED:
        report = verify_packing(g, profile, result.packing)
    else:
        report = check_hypotheses(g, profile)
    summary = {
        "status": result.status,
        "packing": [list(c) for c in result.packing.cycles] if result.packing else None,
        "report": report.to_dict(),
        "moves": result.move_counts,
        "iterations": result.iterations,
        "restarts": result.restarts,
        "oracle_used": result.oracle_used,
        "diagnostics": result.diagnostics,
    }
    _emit(summary, args.json, _render_solve)
    if result.status == PACKED:
        return EXIT_OK if report.ok else EXIT_INPUT
    return EXIT_INFEASIBLE if result.status == INFEASIBLE else EXIT_UNKNOWN


def _write_csv(path: str, summary: dict) -> None:
    move_kinds = sorted(MOVE_KINDS)
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["trial", "seed", "outcome", "oracle_fallback", "theorem_violation", "verified"]
            + [f"moves_{k}" for k in move_kinds]
            + ["wall_s"]
        )
        for row, wall in zip(summary["trials"], summary["timing"]["per_trial_s"]):
            writer.writerow(
                [row["trial"], row["seed"], row["outcome"], row["oracle_fallback"],
                 row["theorem_violation"], row["verified"]]
                + [row["moves"].get(k, 0) for k in move_kinds]
                + [f"{wall:.6f}"]
            )


def _cmd_trials(args) -> int:
    profile = _parse_profile(args)
    cfg = TrialConfig(
        profile=profile,
        side_size=args.side,
        delta=args.delta,
        trials=args.trials,
        seed=args.seed,
        budget=args.budget,
        restarts=args.restarts,
        oracle_limit=args.oracle_limit,
        fill_p=args.fill_p,
        threads=args.threads,
    )
    summary = run_trials(cfg)
    if args.csv:
        _write_csv(args.csv, summary)
    _emit(summary, args.json, _render_trials)
    return EXIT_OK if summary["aggregates"]["theorem_violations"] == 0 else EXIT_INPUT


def _cmd_exhaustive(args) -> int:
    profile = _parse_profile(args)
    summary = run_exhaustive(args.side, profile, force=args.force, oracle_limit=args.oracle_limit)
    _emit(summary, args.json, _render_exhaustive)
    return EXIT_OK if not summary["violations"] else EXIT_INPUT


def _cmd_sharpness(args) -> int:
    summary = run_sharpness(args.k, oracle_limit=args.oracle_limit)
    _emit(summary, args.json, _render_sharpness)
    return EXIT_OK if summary["ok"] else EXIT_INPUT


def _cmd_hunt(args) -> int:
    profile = _parse_profile(args)
    summary = run_hunt(
        args.side,
        profile,
        trials=args.trials,
        seed=args.seed,
        out_dir=args.out,
        oracle_limit=args.oracle_limit,
        fill_p=args.fill_p,
    )
    _emit(summary, args.json, _render_hunt)
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.generator == "complete":
        g = gen_complete(args.m)
        note = f"K_{{{args.m},{args.m}}}"
    elif args.generator == "random":
        g = gen_random_mindeg(args.x, args.y, args.delta, args.seed, args.fill_p)
        note = f"random {args.x}+{args.y}, min degree >= {args.delta}, seed {args.seed}"
    else:
        g, profile = gen_sharpness(args.k)
        note = (
            f"sharpness k={args.k}; pair with --profile "
            f"{','.join(map(str, profile.lengths))} --mode conjecture"
        )
    text = serialize_graph(g)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    print(f"wrote {g.num_vertices} vertices, {g.edge_count} edges: {note}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "solve": _cmd_solve,
        "trials": _cmd_trials,
        "exhaustive": _cmd_exhaustive,
        "sharpness": _cmd_sharpness,
        "hunt": _cmd_hunt,
        "gen": _cmd_gen,
    }
    try:
        return handlers[args.command](args)
    except (GraphError, ProfileError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
