"""Core solver for packing vertex-disjoint long even cycles in a bipartite host.

The engine keeps a partial solution: a prefix of already-placed cycles (one per
profile entry, longest entries first), the leftover vertex pool, and a path
grown inside the pool. Local moves either shrink an oversized placed cycle,
lengthen the path, trade a path endpoint's neighbor out of a placed cycle, or
close the path into the next required cycle. Every non-terminal move strictly
improves the lexicographic potential

    (-(total placed cycle size), path length, induced edges inside placed cycles)

so each attempt terminates; seeded restarts perturb the construction order, and
an exact backtracking oracle certifies small instances when the move engine
stalls.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from . import cyclesearch as cs
from .graphs import BipartiteGraph, bits, mask_of
from .matching import longest_alternating_path, max_matching
from .profiles import CycleProfile
from .verify import verify_packing

PACKED = "packed"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

MOVE_KINDS = ("shrink", "extend", "exchange", "close", "double_exchange")

DEFAULT_ORACLE_LIMIT = 18
DEFAULT_BUDGET = 2000
DEFAULT_RESTARTS = 8


class OracleLimitError(ValueError):
    """Instance too large for the exact oracle."""


def resolve_oracle_limit(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("CYCLEPACK_ORACLE_LIMIT")
    return int(env) if env else DEFAULT_ORACLE_LIMIT


@dataclass(frozen=True)
class Packing:
    """k pairwise disjoint simple cycles, aligned with the profile's sorted entries."""

    cycles: tuple[tuple[int, ...], ...]

    @property
    def total_vertices(self) -> int:
        return sum(len(c) for c in self.cycles)


@dataclass
class PackResult:
    status: str
    packing: Packing | None
    move_counts: dict[str, int]
    iterations: int = 0
    restarts: int = 0
    oracle_used: bool = False
    diagnostics: list[str] = field(default_factory=list)
    trace: list | None = None


@dataclass(frozen=True)
class ExchangeContext:
    """Two placed cycles singled out by degree concentration from the path probes,
    with the distinguished swap vertices on the first of them."""

    p_index: int
    q_index: int
    x_star: int
    y_star: int


class SearchState:
    """Mutable solver state: placed cycles, leftover pool, and the working path."""

    def __init__(self, g: BipartiteGraph, profile: CycleProfile, fixed_cycles=(), path=(), rng=None):
        self.g = g
        self.adj = g.adjacency
        self.profile = profile
        self.targets = profile.lengths
        self.fixed: list[list[int]] = [list(c) for c in fixed_cycles]
        self.fixed_masks: list[int] = [mask_of(c) for c in self.fixed]
        used = 0
        for i, m in enumerate(self.fixed_masks):
            if m & used:
                raise ValueError("placed cycles overlap")
            if len(self.fixed[i]) < self.targets[i] or len(self.fixed[i]) % 2:
                raise ValueError(f"placed cycle {i} does not meet its required length")
            used |= m
        self.pool = g.full_mask & ~used
        self.path: list[int] = list(path)
        self.path_mask = mask_of(self.path)
        if self.path_mask & ~self.pool or len(set(self.path)) != len(self.path):
            raise ValueError("path must be a simple sequence inside the pool")
        self.rng = rng

    @property
    def stage(self) -> int:
        return len(self.fixed)

    @property
    def current_target(self) -> int:
        return self.targets[self.stage]

    def beta(self) -> int:
        return sum(cs.induced_edge_count(self.adj, m) for m in self.fixed_masks)

    def potential(self) -> tuple[int, int, int]:
        return (-sum(len(c) for c in self.fixed), len(self.path), self.beta())

    # -- state mutations ---------------------------------------------------

    def set_path(self, path: list[int]) -> None:
        self.path = path
        self.path_mask = mask_of(path)

    def fix_cycle(self, cycle) -> None:
        m = mask_of(cycle)
        assert m & self.pool == m and len(cycle) % 2 == 0
        self.fixed.append(list(cycle))
        self.fixed_masks.append(m)
        self.pool &= ~m
        self.set_path([])

    def replace_cycle(self, j: int, cycle) -> None:
        old = self.fixed_masks[j]
        new = mask_of(cycle)
        taken = new & ~old
        released = old & ~new
        self.fixed[j] = list(cycle)
        self.fixed_masks[j] = new
        self.pool = (self.pool | released) & ~taken
        if taken & self.path_mask:
            self._drop_from_path(taken)

    def _drop_from_path(self, removed_mask: int) -> None:
        # keep the longest contiguous stretch that survives
        best: list[int] = []
        cur: list[int] = []
        for v in self.path:
            if removed_mask >> v & 1:
                if len(cur) > len(best):
                    best = cur
                cur = []
            else:
                cur.append(v)
        if len(cur) > len(best):
            best = cur
        self.set_path(best)


# -- moves -------------------------------------------------------------------


def move_shrink(st: SearchState) -> bool:
    """Replace an oversized placed cycle by a shorter one (still meeting its
    required length) routed through a vertex with heavy adjacency into it.

    Applies when some pool or on-cycle vertex has at least c_j/2 neighbors on a
    cycle longer than c_j; the total placed size strictly drops.
    """
    adj = st.adj
    for j, cyc in enumerate(st.fixed):
        tgt = st.targets[j]
        size = len(cyc)
        if size <= tgt:
            continue
        cmask = st.fixed_masks[j]
        best: tuple[int, ...] | None = None
        for u in bits(st.pool | cmask):
            if (adj[u] & cmask).bit_count() < tgt // 2:
                continue
            search = cmask | 1 << u
            hi = size if best is None else len(best)
            found = cs.shortest_cycle_in_window(adj, search, tgt, hi)
            if found is not None and (best is None or len(found) < len(best)):
                best = found
                if len(best) == tgt:
                    break
        if best is not None:
            st.replace_cycle(j, best)
            return True
    return False


def _alternating_family(st: SearchState) -> list[list[int]]:
    """Candidate detour paths in the pool outside the current path: maximal
    alternating walks of a maximum matching (from unmatched vertices, and from
    matched vertices leaving along the matching edge), plus bare vertices."""
    rest = st.pool & ~st.path_mask
    if not rest:
        return []
    view = st.g.induced(rest)
    m = max_matching(view)
    qs: list[list[int]] = []
    seen: set[tuple[int, ...]] = set()

    def add(q: list[int]) -> None:
        t = tuple(q)
        if t not in seen:
            seen.add(t)
            qs.append(q)

    for v in bits(rest):
        if not m.covers(v):
            add(longest_alternating_path(view, m, v, False))
    for v in bits(rest):
        if m.covers(v):
            add(longest_alternating_path(view, m, v, True))
    for v in bits(rest):
        add([v])
    return qs


def _pick(st: SearchState, cands_mask: int) -> int:
    ids = list(bits(cands_mask))
    if st.rng is not None and len(ids) > 1:
        return st.rng.choice(ids)
    return ids[0]


def _rotate_extend(st: SearchState, p: list[int]) -> list[int] | None:
    adj = st.adj
    outside = st.pool & ~st.path_mask
    s = len(p)
    tail = p[-1]
    for i in range(s - 3, -1, -1):
        if not adj[tail] >> p[i] & 1:
            continue
        pivot = p[i + 1]
        ext = adj[pivot] & outside
        if ext:
            rotated = p[: i + 1] + p[i + 1 :][::-1]
            return rotated + [_pick(st, ext)]
    return None


def move_extend_path(st: SearchState) -> bool:
    """Strictly lengthen the pool path: seed it, extend an endpoint, rotate to
    expose an extendable endpoint, or splice in an alternating-walk detour."""
    adj = st.adj
    if not st.path:
        if not st.pool:
            return False
        st.set_path([_pick(st, st.pool)])
        return True
    p = st.path
    outside = st.pool & ~st.path_mask

    ext = adj[p[-1]] & outside
    if ext:
        st.set_path(p + [_pick(st, ext)])
        return True
    ext = adj[p[0]] & outside
    if ext:
        st.set_path([_pick(st, ext)] + p)
        return True

    if len(p) >= 3 and outside:
        rotated = _rotate_extend(st, p)
        if rotated is None:
            rotated = _rotate_extend(st, p[::-1])
        if rotated is not None:
            st.set_path(rotated)
            return True

    if outside:
        s = len(p)
        head_adj, tail_adj = adj[p[0]], adj[p[-1]]
        for q in _alternating_family(st):
            e0, e1 = q[0], q[-1]
            if head_adj >> e0 & 1:
                st.set_path(q[::-1] + p)
                return True
            if head_adj >> e1 & 1:
                st.set_path(q + p)
                return True
            if tail_adj >> e0 & 1:
                st.set_path(p + q)
                return True
            if tail_adj >> e1 & 1:
                st.set_path(p + q[::-1])
                return True
            t = len(q)
            for i in range(s):
                ai = adj[p[i]]
                i_e0 = bool(ai >> e0 & 1)
                i_e1 = bool(ai >> e1 & 1)
                if not (i_e0 or i_e1):
                    continue
                for j in range(i + 1, min(s, i + t + 1)):  # only strictly lengthening cuts
                    aj = adj[p[j]]
                    if i_e0 and aj >> e1 & 1:
                        st.set_path(p[: i + 1] + q + p[j:])
                        return True
                    if i_e1 and aj >> e0 & 1:
                        st.set_path(p[: i + 1] + q[::-1] + p[j:])
                        return True
    return False


def move_exchange_one(st: SearchState) -> bool:
    """Trade one vertex between a tight placed cycle and the pool.

    When a path endpoint u' and an off-path pool vertex u'' on the opposite
    side together see at least c_j - 1 vertices of a cycle at its required
    length, some neighbor v of u' on that cycle can step out while u'' steps
    in; v then extends the path at u'. Placed size is unchanged, the path grows.
    """
    if not st.path:
        return False
    adj = st.adj
    g = st.g
    rest = st.pool & ~st.path_mask
    if not rest:
        return False
    endpoints = [(st.path[0], "head")]
    if len(st.path) > 1:
        endpoints.append((st.path[-1], "tail"))
    for j in range(len(st.fixed)):
        tgt = st.targets[j]
        if len(st.fixed[j]) != tgt:
            continue
        cmask = st.fixed_masks[j]
        for u1, where in endpoints:
            d1 = (adj[u1] & cmask).bit_count()
            opposite = g.full_mask ^ g.side_mask(u1)
            for u2 in bits(rest & opposite):
                if d1 + (adj[u2] & cmask).bit_count() < tgt - 1:
                    continue
                best: tuple[int, ...] | None = None
                best_key = (-1, 0)
                for v in bits(adj[u1] & cmask):
                    newset = (cmask ^ 1 << v) | 1 << u2
                    ham = cs.hamilton_cycle_on(adj, newset)
                    if ham is None:
                        continue
                    key = (cs.induced_edge_count(adj, newset), -v)
                    if key > best_key:
                        best, best_key = ham, key
                if best is None:
                    continue
                v = -best_key[1]
                st.replace_cycle(j, best)  # moves u2 in, v out to the pool
                if where == "head":
                    st.set_path([v] + st.path)
                else:
                    st.set_path(st.path + [v])
                return True
    return False


def move_close_cycle(st: SearchState) -> list[int] | None:
    """Look for a cycle of the current required length (or a bit more) in the pool:
    a chord across the path, two crossing endpoint chords, or the path plus an
    alternating-walk detour. Returns the shortest cycle found, favoring tight ones."""
    target = st.current_target
    if st.pool.bit_count() < target:
        return None
    adj = st.adj
    p = st.path
    s = len(p)
    best: list[int] | None = None

    if s >= target:
        for span in range(target, s + 1, 2):
            for i in range(s - span + 1):
                j = i + span - 1
                if adj[p[i]] >> p[j] & 1:
                    best = p[i : j + 1]
                    break
            if best is not None:
                break
    if best is not None and len(best) == target:
        return best

    if s >= 4:
        head_adj, tail_adj = adj[p[0]], adj[p[-1]]
        for i in range(s - 1):
            if not tail_adj >> p[i] & 1:
                continue
            for j in range(i + 1, s - 1):
                if not head_adj >> p[j] & 1:
                    continue
                length = (i + 1) + (s - j)
                if length >= target and (best is None or length < len(best)):
                    best = p[: i + 1] + p[j:][::-1]
                    if length == target:
                        return best

    for q in _alternating_family(st):
        e0, e1 = q[0], q[-1]
        t = len(q)
        single = t == 1
        for i in range(s):
            ai = adj[p[i]]
            i_e0 = bool(ai >> e0 & 1)
            i_e1 = bool(ai >> e1 & 1)
            if not (i_e0 or i_e1):
                continue
            lo_j = i + 1 if single else i
            for j in range(lo_j, s):
                length = (j - i + 1) + t
                if length < target or (best is not None and length >= len(best)):
                    continue
                if i == j and t < 3:
                    continue
                aj = adj[p[j]]
                if i_e0 and aj >> e1 & 1:
                    best = p[i : j + 1] + q[::-1]
                elif i_e1 and not single and aj >> e0 & 1:
                    best = p[i : j + 1] + q
                if best is not None and len(best) == target:
                    return best
    return best


def select_concentration(st: SearchState) -> ExchangeContext | None:
    """When the path spans the whole pool and single-vertex moves are out, look
    for a placed cycle p nearly saturated by the path endpoints and a second
    cycle q whose adjacency from the six probe vertices is concentrated enough
    (sum at least 3c_q - 5) to justify the two-vertex swap family."""
    if st.stage != st.profile.k - 1 or st.path_mask != st.pool:
        return None
    p = st.path
    s = len(p)
    if s < 4 or s % 2:
        return None
    g = st.g
    adj = st.adj
    e_head, e_tail = p[0], p[-1]
    e_x, e_y = (e_head, e_tail) if g.is_x(e_head) else (e_tail, e_head)
    if not g.is_x(e_x) or g.is_x(e_y):
        return None
    probes = (p[0], p[1], p[-2], p[-1])
    for jp in range(len(st.fixed)):
        c_p = st.targets[jp]
        if len(st.fixed[jp]) != c_p:
            continue
        cmask = st.fixed_masks[jp]
        dx = (adj[e_x] & cmask).bit_count()
        dy = (adj[e_y] & cmask).bit_count()
        if dx + dy < c_p - 1 or max(dx, dy) < c_p // 2:
            continue
        other = e_y if dx == c_p // 2 else e_x
        opp = cmask & ~g.side_mask(other)
        non_nbrs = opp & ~adj[other]
        x_star = _lowest(non_nbrs) if non_nbrs else _lowest(opp)
        cyc = st.fixed[jp]
        pos = cyc.index(x_star)
        ring_nbrs = 1 << cyc[(pos + 1) % c_p] | 1 << cyc[(pos - 1) % c_p]
        y_cands = cmask & ~g.side_mask(x_star) & ~ring_nbrs
        if not y_cands:
            continue
        y_star = _lowest(y_cands)
        S = list(probes) + [x_star, y_star]
        for jq in range(len(st.fixed)):
            if jq == jp:
                continue
            c_q = st.targets[jq]
            if len(st.fixed[jq]) != c_q:
                continue
            qmask = st.fixed_masks[jq]
            if sum((adj[z] & qmask).bit_count() for z in S) >= 3 * c_q - 5:
                return ExchangeContext(jp, jq, x_star, y_star)
    return None


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def move_double_exchange(st: SearchState, ctx: ExchangeContext) -> list[tuple[int, ...]] | None:
    """Generalized bounded swap among the pool, cycle p, and cycle q.

    Enumerates every pattern that moves at most two vertices out of each part
    (path probes out of the pool, the distinguished pair out of cycle p, single
    vertices or adjacent pairs out of cycle q) and reassigns each mover to one
    of the other two parts, at most two in. A pattern succeeds when all three
    modified parts simultaneously contain cycles of their required lengths;
    the first success completes the packing.
    """
    from itertools import combinations, product

    adj = st.adj
    g = st.g
    p_idx, q_idx = ctx.p_index, ctx.q_index
    c_cur = st.current_target
    c_p, c_q = st.targets[p_idx], st.targets[q_idx]
    pool0 = st.pool
    b1_0 = st.fixed_masks[p_idx]
    b2_0 = st.fixed_masks[q_idx]
    path = st.path
    probes = []
    for v in (path[0], path[1], path[-2], path[-1]):
        if v not in probes:
            probes.append(v)
    p_outs = [ctx.x_star, ctx.y_star]
    qcyc = st.fixed[q_idx]
    q_len = len(qcyc)
    q_out_options: list[tuple[int, ...]] = [()]
    q_out_options += [(v,) for v in qcyc]
    q_out_options += [(qcyc[i], qcyc[(i + 1) % q_len]) for i in range(q_len)]

    r0_options = [()] + [(v,) for v in probes] + list(combinations(probes, 2))
    r1_options = [(), (p_outs[0],), (p_outs[1],), tuple(p_outs)]

    searched: dict[tuple[int, int], tuple[int, ...] | None] = {}

    def cycle_in(mask: int, need: int) -> tuple[int, ...] | None:
        key = (mask, need)
        if key not in searched:
            found = None
            if mask.bit_count() >= need:
                xs = (mask & g.x_mask).bit_count()
                ys = (mask & g.y_mask).bit_count()
                if xs >= need // 2 and ys >= need // 2:
                    found = cs.find_cycle_at_least(adj, mask, need)
            searched[key] = found
        return searched[key]

    for r0 in r0_options:
        for a0 in product(("p", "q"), repeat=len(r0)):
            for r1 in r1_options:
                for a1 in product(("pool", "q"), repeat=len(r1)):
                    for r2 in q_out_options:
                        for a2 in product(("pool", "p"), repeat=len(r2)):
                            ins_pool = [v for v, d in zip(r1, a1) if d == "pool"]
                            ins_pool += [v for v, d in zip(r2, a2) if d == "pool"]
                            ins_p = [v for v, d in zip(r0, a0) if d == "p"]
                            ins_p += [v for v, d in zip(r2, a2) if d == "p"]
                            ins_q = [v for v, d in zip(r0, a0) if d == "q"]
                            ins_q += [v for v, d in zip(r1, a1) if d == "q"]
                            if len(ins_pool) > 2 or len(ins_p) > 2 or len(ins_q) > 2:
                                continue
                            pool2 = (pool0 & ~mask_of(r0)) | mask_of(ins_pool)
                            b1 = (b1_0 & ~mask_of(r1)) | mask_of(ins_p)
                            b2 = (b2_0 & ~mask_of(r2)) | mask_of(ins_q)
                            cyc0 = cycle_in(pool2, c_cur)
                            if cyc0 is None:
                                continue
                            cyc1 = cycle_in(b1, c_p)
                            if cyc1 is None:
                                continue
                            cyc2 = cycle_in(b2, c_q)
                            if cyc2 is None:
                                continue
                            result = [tuple(c) for c in st.fixed]
                            result[p_idx] = cyc1
                            result[q_idx] = cyc2
                            result.append(cyc0)
                            return result
    return None


# -- engine --------------------------------------------------------------------


def _mix(seed: int, attempt: int) -> int:
    return (seed * 0x9E3779B1 + attempt * 0x85EBCA77) & 0xFFFFFFFFFFFF


def _stall_bound_diagnostic(st: SearchState, diagnostics: list[str]) -> None:
    # Sanity bound at a terminal stall: with the path spanning the pool and no
    # closing chord, each endpoint sees fewer than half the still-needed cycle
    # in the pool, so its combined adjacency into any tight placed cycle stays
    # below c_cur/2 + c_j/2 - 1. A violation means the move scan missed something.
    if st.stage != st.profile.k - 1 or st.path_mask != st.pool or not st.path:
        return
    adj = st.adj
    c_cur = st.current_target
    for j, cyc in enumerate(st.fixed):
        if len(cyc) != st.targets[j]:
            continue
        bound = c_cur // 2 + st.targets[j] // 2 - 1
        for z in (st.path[0], st.path[-1]):
            got = (adj[z] & st.pool).bit_count() + (adj[z] & st.fixed_masks[j]).bit_count()
            if got > bound:
                diagnostics.append(
                    f"stall-bound violation: endpoint {z} has combined degree {got} > {bound} "
                    f"against placed cycle {j}"
                )


def _attempt(g, profile, budget, rng, counts, diagnostics, trace):
    """One restart-free run of the move loop; returns the full cycle list or None."""
    st = SearchState(g, profile, rng=rng)
    iterations = 0
    while st.stage < profile.k:
        if st.pool.bit_count() < st.current_target:
            return None, iterations
        progressed = False
        while iterations < budget:
            iterations += 1
            before = st.potential()
            if move_shrink(st):
                _record(st, counts, trace, "shrink", before)
                continue
            if move_extend_path(st):
                _record(st, counts, trace, "extend", before)
                continue
            if move_exchange_one(st):
                _record(st, counts, trace, "exchange", before)
                continue
            cycle = move_close_cycle(st)
            if cycle is not None:
                counts["close"] += 1
                if trace is not None:
                    trace.append(("close", before, None))
                st.fix_cycle(cycle)
                progressed = True
                break
            ctx = select_concentration(st)
            if ctx is not None:
                full = move_double_exchange(st, ctx)
                if full is not None:
                    counts["double_exchange"] += 1
                    if trace is not None:
                        trace.append(("double_exchange", before, None))
                    return full, iterations
            _stall_bound_diagnostic(st, diagnostics)
            return None, iterations
        if not progressed:
            return None, iterations
    return [tuple(c) for c in st.fixed], iterations


def _record(st, counts, trace, kind, before):
    counts[kind] += 1
    after = st.potential()
    if trace is not None:
        trace.append((kind, before, after))
    if not after > before:
        raise RuntimeError(f"move {kind} failed to improve the potential: {before} -> {after}")


def pack(
    g: BipartiteGraph,
    profile: CycleProfile,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    oracle_limit: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    record_trace: bool = False,
) -> PackResult:
    """Find vertex-disjoint cycles realizing the profile, or certify their absence.

    Outcomes: ``packed`` with a verified packing; ``infeasible`` only with an
    exhaustive certificate (immediate pigeonhole or the exact oracle on
    instances within the oracle limit); ``unknown`` when the move engine and its
    restarts are exhausted on an instance too large to certify.
    """
    limit = resolve_oracle_limit(oracle_limit)
    counts = {k: 0 for k in MOVE_KINDS}
    diagnostics: list[str] = []
    trace: list | None = [] if record_trace else None
    if profile.n > g.num_vertices:
        diagnostics.append(
            f"profile needs {profile.n} vertices, host has {g.num_vertices}"
        )
        return PackResult(INFEASIBLE, None, counts, 0, 0, False, diagnostics, trace)
    total_iterations = 0
    for attempt in range(restarts + 1):
        rng = random.Random(_mix(seed, attempt)) if attempt else None
        cycles, iterations = _attempt(g, profile, budget, rng, counts, diagnostics, trace)
        total_iterations += iterations
        if cycles is not None:
            packing = Packing(tuple(cycles))
            report = verify_packing(g, profile, packing)
            if not report.ok:
                raise RuntimeError(f"internal error: engine produced an invalid packing: {report.to_dict()}")
            return PackResult(PACKED, packing, counts, total_iterations, attempt, False, diagnostics, trace)
    if g.num_vertices <= limit:
        oracle = brute_force_pack(g, profile, oracle_limit=limit)
        return PackResult(
            oracle.status, oracle.packing, counts, total_iterations, restarts, True, diagnostics, trace
        )
    return PackResult(UNKNOWN, None, counts, total_iterations, restarts, False, diagnostics, trace)


def brute_force_pack(
    g: BipartiteGraph, profile: CycleProfile, oracle_limit: int | None = None
) -> PackResult:
    """Exact backtracking oracle: complete search over ordered disjoint cycle
    choices, longest profile entries first, with pigeonhole and 2-core pruning.
    An ``infeasible`` verdict is a proof of non-existence. Refuses instances
    larger than the oracle limit."""
    limit = resolve_oracle_limit(oracle_limit)
    if g.num_vertices > limit:
        raise OracleLimitError(
            f"{g.num_vertices} vertices exceed the oracle limit {limit}; use pack()"
        )
    counts = {k: 0 for k in MOVE_KINDS}
    lengths = profile.lengths
    k = profile.k
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + lengths[i]
    if suffix[0] > g.num_vertices:
        return PackResult(INFEASIBLE, None, counts, oracle_used=True)
    adj = g.adjacency
    failed: set[tuple[int, int]] = set()

    def rec(remaining: int, i: int) -> list[tuple[int, ...]] | None:
        if i == k:
            return []
        key = (remaining, i)
        if key in failed:
            return None
        core = cs.two_core(adj, remaining)
        if core.bit_count() < suffix[i]:
            failed.add(key)
            return None
        hi = core.bit_count() - suffix[i + 1]
        for cyc in cs.iter_cycles_window(adj, core, lengths[i], hi):
            rest = rec(remaining & ~cs.mask_of_cycle(cyc), i + 1)
            if rest is not None:
                return [cyc] + rest
        failed.add(key)
        return None

    cycles = rec(g.full_mask, 0)
    if cycles is None:
        return PackResult(INFEASIBLE, None, counts, oracle_used=True)
    packing = Packing(tuple(cycles))
    report = verify_packing(g, profile, packing)
    if not report.ok:
        raise RuntimeError(f"internal error: oracle produced an invalid packing: {report.to_dict()}")
    return PackResult(PACKED, packing, counts, oracle_used=True)
