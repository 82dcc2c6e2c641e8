"""Campaign drivers behind the CLI: seeded random trials, exhaustive tiny-scale
enumeration, the sharpness regression, and the counterexample hunt.

All summaries are plain dicts ready for JSON. Wall-clock measurements live only
under the top-level ``"timing"`` key so that identical seeds reproduce the rest
of the summary byte for byte.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .graphs import BipartiteGraph, gen_random_mindeg, gen_sharpness, serialize_graph
from .packer import (
    DEFAULT_BUDGET,
    DEFAULT_RESTARTS,
    INFEASIBLE,
    PACKED,
    brute_force_pack,
    pack,
    resolve_oracle_limit,
)
from .profiles import CycleProfile
from .verify import check_hypotheses, verify_packing

EXHAUSTIVE_SIDE_CAP = 4


class ConfigError(ValueError):
    """Invalid campaign configuration."""


@dataclass
class TrialConfig:
    profile: CycleProfile
    side_size: int
    delta: int | None = None  # None: use the profile's degree threshold
    trials: int = 1
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    restarts: int = DEFAULT_RESTARTS
    oracle_limit: int | None = None
    fill_p: float = 0.5
    threads: int = 1

    def resolved_delta(self) -> int:
        d = self.profile.threshold if self.delta is None else self.delta
        if d < 0 or d > self.side_size:
            raise ConfigError(f"delta {d} infeasible for side size {self.side_size}")
        return d

    def validate(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.side_size < 1:
            raise ConfigError("side size must be >= 1")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        self.resolved_delta()


def _run_one_trial(cfg: TrialConfig, index: int, delta: int, limit: int):
    trial_seed = cfg.seed ^ index  # per-index stream: worker count cannot matter
    started = time.perf_counter()
    g = gen_random_mindeg(cfg.side_size, cfg.side_size, delta, trial_seed, cfg.fill_p)
    hyp = check_hypotheses(g, cfg.profile)
    result = pack(
        g,
        cfg.profile,
        budget=cfg.budget,
        seed=trial_seed,
        oracle_limit=limit,
        restarts=cfg.restarts,
    )
    verification = None
    if result.status == PACKED:
        verification = verify_packing(g, cfg.profile, result.packing).to_dict()
    # In the guaranteed regime at certifiable scale a packing must exist, so a
    # certified "infeasible" can only mean an implementation bug.
    violation = (
        hyp.ok
        and 2 * cfg.side_size <= limit
        and result.status == INFEASIBLE
    )
    elapsed = time.perf_counter() - started
    row = {
        "trial": index,
        "seed": trial_seed,
        "outcome": result.status,
        "oracle_fallback": result.oracle_used,
        "hypotheses_hold": hyp.ok,
        "verified": bool(verification and verification["ok"]),
        "verification": verification,
        "theorem_violation": violation,
        "moves": dict(result.move_counts),
        "iterations": result.iterations,
        "restarts": result.restarts,
        "packing": [list(c) for c in result.packing.cycles] if result.packing else None,
    }
    return row, elapsed


def run_trials(cfg: TrialConfig) -> dict:
    """Seeded campaign of random instances at the configured minimum degree."""
    cfg.validate()
    delta = cfg.resolved_delta()
    limit = resolve_oracle_limit(cfg.oracle_limit)

    def job(i: int):
        return _run_one_trial(cfg, i, delta, limit)

    started = time.perf_counter()
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            outcomes = list(ex.map(job, range(cfg.trials)))
    else:
        outcomes = [job(i) for i in range(cfg.trials)]
    total = time.perf_counter() - started

    rows = [r for r, _ in outcomes]
    times = [t for _, t in outcomes]
    counts: dict[str, int] = {}
    move_hist: dict[str, int] = {}
    fallbacks = violations = packed = 0
    for row in rows:
        counts[row["outcome"]] = counts.get(row["outcome"], 0) + 1
        for kind, c in row["moves"].items():
            move_hist[kind] = move_hist.get(kind, 0) + c
        fallbacks += bool(row["oracle_fallback"])
        violations += bool(row["theorem_violation"])
        packed += row["outcome"] == PACKED
    summary = {
        "command": "trials",
        "config": {
            "profile": list(cfg.profile.lengths),
            "mode": cfg.profile.mode,
            "side_size": cfg.side_size,
            "delta": delta,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "budget": cfg.budget,
            "restarts": cfg.restarts,
            "oracle_limit": limit,
            "fill_p": cfg.fill_p,
        },
        "trials": rows,
        "aggregates": {
            "success_rate": packed / cfg.trials,
            "outcomes": {k: counts[k] for k in sorted(counts)},
            "oracle_fallbacks": fallbacks,
            "theorem_violations": violations,
            "move_histogram": {k: move_hist[k] for k in sorted(move_hist)},
        },
        "timing": {
            "per_trial_s": times,
            "mean_s": sum(times) / len(times),
            "max_s": max(times),
            "total_s": total,
        },
    }
    return summary


def run_exhaustive(side: int, profile: CycleProfile, force: bool = False,
                   oracle_limit: int | None = None) -> dict:
    """Check the packing guarantee on every bipartite graph with the given side size.

    Iterates raw neighborhood-row assignments with an early prune: a subtree is
    abandoned as soon as some fully-decided vertex can no longer reach the
    degree threshold, which can only discard hypothesis-failing graphs. Every
    hypothesis-satisfying graph is handed to the exact oracle; any infeasible
    verdict there is a violation of the guarantee and is reported loudly.
    """
    if side < 1:
        raise ConfigError("side must be >= 1")
    if side > EXHAUSTIVE_SIDE_CAP and not force:
        raise ConfigError(
            f"side {side} enumerates 2^{side * side} graphs; pass force to override the cap"
        )
    limit = resolve_oracle_limit(oracle_limit)
    if 2 * side > limit:
        raise ConfigError(f"side {side} exceeds the oracle limit {limit}")
    threshold = profile.threshold
    balance_ok = side >= profile.n // 2
    started = time.perf_counter()
    space = 1 << (side * side)
    stats = {"leaves": 0, "satisfying": 0, "packed": 0}
    violations: list[dict] = []
    if balance_ok:
        row_choices = range(1 << side)
        rows: list[int] = []
        col_deg = [0] * side

        def descend(depth: int) -> None:
            if depth == side:
                stats["leaves"] += 1
                if any(c < threshold for c in col_deg):
                    return
                stats["satisfying"] += 1
                edges = [
                    (i, side + j)
                    for i, row in enumerate(rows)
                    for j in range(side)
                    if row >> j & 1
                ]
                g = BipartiteGraph(side, side, edges)
                verdict = brute_force_pack(g, profile, oracle_limit=limit)
                if verdict.status == PACKED:
                    stats["packed"] += 1
                else:
                    violations.append({"rows": list(rows), "graph": serialize_graph(g)})
                return
            remaining = side - depth - 1
            for row in row_choices:
                if row.bit_count() < threshold:
                    continue  # this X vertex is fully decided and under-degree
                ok = True
                for j in range(side):
                    col_deg[j] += row >> j & 1
                    if col_deg[j] + remaining < threshold:
                        ok = False
                if ok:
                    rows.append(row)
                    descend(depth + 1)
                    rows.pop()
                for j in range(side):
                    col_deg[j] -= row >> j & 1

        descend(0)
    summary = {
        "command": "exhaustive",
        "config": {
            "side": side,
            "profile": list(profile.lengths),
            "mode": profile.mode,
            "threshold": threshold,
            "oracle_limit": limit,
        },
        "space_size": space,
        "balance_hypothesis_ok": balance_ok,
        "leaves_visited": stats["leaves"],
        "hypothesis_satisfying": stats["satisfying"],
        "packed": stats["packed"],
        "violations": violations,
        "timing": {"total_s": time.perf_counter() - started},
    }
    return summary


def run_sharpness(k: int, oracle_limit: int | None = None) -> dict:
    """Certify that the tight construction admits no packing while sitting one
    unit below the degree threshold."""
    limit = resolve_oracle_limit(oracle_limit)
    g, profile = gen_sharpness(k)
    if g.num_vertices > limit:
        raise ConfigError(
            f"sharpness instance has {g.num_vertices} vertices, above the oracle limit {limit}"
        )
    started = time.perf_counter()
    delta = g.min_degree()
    threshold = profile.threshold
    verdict = brute_force_pack(g, profile, oracle_limit=limit)
    ok = verdict.status == INFEASIBLE and delta == k + 1 == threshold - 1
    return {
        "command": "sharpness",
        "config": {"k": k, "oracle_limit": limit},
        "vertices": g.num_vertices,
        "min_degree": delta,
        "threshold": threshold,
        "profile": list(profile.lengths),
        "verdict": verdict.status,
        "certified_infeasible": verdict.status == INFEASIBLE,
        "ok": ok,
        "timing": {"total_s": time.perf_counter() - started},
    }


def run_hunt(
    side: int,
    profile: CycleProfile,
    trials: int,
    seed: int,
    out_dir: str,
    oracle_limit: int | None = None,
    fill_p: float = 0.5,
) -> dict:
    """Sample hypothesis-satisfying instances for a relaxed-mode profile and
    record any oracle-certified infeasible instance as a counterexample candidate."""
    limit = resolve_oracle_limit(oracle_limit)
    if 2 * side > limit:
        raise ConfigError(f"side {side} exceeds the oracle limit {limit}; verdicts would not be certified")
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    delta = profile.threshold
    if delta > side:
        raise ConfigError(f"threshold {delta} exceeds side size {side}")
    os.makedirs(out_dir, exist_ok=True)
    started = time.perf_counter()
    hits: list[dict] = []
    examined = 0
    for i in range(trials):
        trial_seed = seed ^ i
        g = gen_random_mindeg(side, side, delta, trial_seed, fill_p)
        if not check_hypotheses(g, profile).ok:
            continue
        examined += 1
        verdict = brute_force_pack(g, profile, oracle_limit=limit)
        if verdict.status == INFEASIBLE:
            stem = os.path.join(out_dir, f"counterexample_{i:05d}")
            with open(stem + ".graph", "w", encoding="ascii") as fh:
                fh.write(serialize_graph(g))
            meta = {
                "trial": i,
                "seed": trial_seed,
                "side": side,
                "profile": list(profile.lengths),
                "mode": profile.mode,
                "graph_file": stem + ".graph",
            }
            with open(stem + ".json", "w", encoding="ascii") as fh:
                json.dump(meta, fh, indent=2)
                fh.write("\n")
            hits.append(meta)
    return {
        "command": "hunt",
        "config": {
            "side": side,
            "profile": list(profile.lengths),
            "mode": profile.mode,
            "delta": delta,
            "trials": trials,
            "seed": seed,
            "oracle_limit": limit,
            "out_dir": out_dir,
        },
        "hypothesis_satisfying": examined,
        "counterexamples": hits,
        "counterexample_count": len(hits),
        "timing": {"total_s": time.perf_counter() - started},
    }
