import random

import pytest

from cyclepack import (
    BipartiteGraph,
    ExchangeContext,
    OracleLimitError,
    SearchState,
    brute_force_pack,
    gen_complete,
    gen_random_mindeg,
    gen_sharpness,
    make_profile,
    pack,
    verify_packing,
)
from cyclepack.packer import (
    move_close_cycle,
    move_double_exchange,
    move_exchange_one,
    move_extend_path,
    move_shrink,
    select_concentration,
)
from oracle_partition import partition_feasible


def assert_valid_cycle(g, cyc, min_len=4):
    cyc = tuple(cyc)
    assert len(cyc) >= min_len and len(cyc) % 2 == 0
    assert len(set(cyc)) == len(cyc)
    for a, b in zip(cyc, cyc[1:] + (cyc[0],)):
        assert g.has_edge(a, b), f"{a}-{b} missing in {cyc}"


class TestMoveShrink:
    def host_with_apex(self):
        # 8-cycle over X={0..3}, Y={4..7}; apex 8 on the Y side sees 0, 1, 2
        edges = [(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (0, 7)]
        edges += [(0, 8), (1, 8), (2, 8)]
        return BipartiteGraph(4, 5, edges), [0, 4, 1, 5, 2, 6, 3, 7]

    def test_apex_shrinks_eight_cycle_to_six(self):
        g, cycle8 = self.host_with_apex()
        st = SearchState(g, make_profile([6, 6]), fixed_cycles=[cycle8])
        before = st.potential()
        assert move_shrink(st)
        assert len(st.fixed[0]) == 6
        assert st.potential() > before
        # the densest six-cycle through the apex wins the beta tie-break
        assert sorted(st.fixed[0]) == [0, 1, 2, 4, 5, 8]
        assert st.pool.bit_count() == 3
        assert_valid_cycle(g, tuple(st.fixed[0]))

    def test_no_move_when_cycles_tight(self):
        g = gen_complete(3)
        st = SearchState(g, make_profile([6, 6]), fixed_cycles=[[0, 3, 1, 4, 2, 5]])
        assert not move_shrink(st)

    def test_no_move_without_degree_concentration(self):
        g, cycle8 = self.host_with_apex()
        # drop one apex edge: degree 2 < 6/2 leaves no trigger
        edges = [e for e in g.edges() if e != (2, 8)]
        g2 = BipartiteGraph(4, 5, edges)
        st = SearchState(g2, make_profile([6, 6]), fixed_cycles=[cycle8])
        assert not move_shrink(st)


class TestSearchState:
    def test_rejects_overlapping_cycles(self):
        g = gen_complete(6)
        with pytest.raises(ValueError):
            SearchState(g, make_profile([6, 6]), fixed_cycles=[[0, 6, 1, 7, 2, 8], [2, 8, 3, 9, 4, 10]])

    def test_rejects_path_outside_pool(self):
        g = gen_complete(6)
        with pytest.raises(ValueError):
            SearchState(g, make_profile([6, 6]), fixed_cycles=[[0, 6, 1, 7, 2, 8]], path=[0])

    def test_replace_cycle_repairs_path(self):
        g = gen_complete(6)
        st = SearchState(g, make_profile([6, 6]), fixed_cycles=[[0, 6, 1, 7, 2, 8]], path=[3, 9, 4, 10, 5])
        # pull 9 into the cycle in place of 6: the path must drop 9, keeping its longest piece
        st.replace_cycle(0, [0, 9, 1, 7, 2, 8])
        assert st.path == [4, 10, 5]
        assert not st.path_mask & st.fixed_masks[0]
        assert st.pool >> 6 & 1 and not st.pool >> 9 & 1


class TestMoveExtendPath:
    def test_single_vertex_grows(self):
        g = gen_complete(2)
        st = SearchState(g, make_profile([4], mode="conjecture"), path=[0])
        assert move_extend_path(st)
        assert len(st.path) == 2

    def test_hamilton_path_no_move(self):
        g = BipartiteGraph(2, 2, [(0, 2), (1, 2), (1, 3)])
        st = SearchState(g, make_profile([4], mode="conjecture"), path=[0, 2, 1, 3])
        assert not move_extend_path(st)

    def test_two_edges_with_bridge_reach_four(self):
        # a-b, c-d plus the bridge b-c: repeated extension turns one edge into 4 vertices
        g = BipartiteGraph(2, 2, [(0, 2), (1, 3), (1, 2)])
        st = SearchState(g, make_profile([4], mode="conjecture"), path=[0, 2])
        while move_extend_path(st):
            pass
        assert len(st.path) == 4

    def test_rotation_unlocks_extension(self):
        # path 0-3-1-4 stuck at both ends unless rotated: 4~0 chord exposes 1, 1~5 extends
        g = BipartiteGraph(3, 3, [(0, 3), (1, 3), (1, 4), (0, 4), (2, 5), (1, 5)])
        st = SearchState(g, make_profile([4], mode="conjecture"), path=[0, 3, 1, 4])
        grew = move_extend_path(st)
        assert grew and len(st.path) == 5


class TestMoveExchangeOne:
    def exchange_host(self, second_probe_degree=2):
        # tight 6-cycle; path endpoint 3 sees three cycle vertices, off-path 7 sees two
        edges = [(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (0, 6)]  # cycle 0-4-1-5-2-6
        edges += [(3, 4), (3, 5), (3, 6)]
        edges += [(0, 7), (1, 7), (2, 7)][:second_probe_degree]
        return BipartiteGraph(4, 4, edges)

    def test_swap_brings_neighbor_to_path(self):
        g = self.exchange_host()
        st = SearchState(g, make_profile([6, 6]), fixed_cycles=[[0, 4, 1, 5, 2, 6]], path=[3])
        before = st.potential()
        assert move_exchange_one(st)
        assert st.potential() > before
        assert st.path == [4, 3]  # the unique feasible ejected vertex joins the path
        assert 7 in st.fixed[0] and 4 not in st.fixed[0]
        assert len(st.fixed[0]) == 6
        assert_valid_cycle(g, tuple(st.fixed[0]))

    def test_saturated_newcomer_any_ejection_works(self):
        g = self.exchange_host(second_probe_degree=3)
        st = SearchState(g, make_profile([6, 6]), fixed_cycles=[[0, 4, 1, 5, 2, 6]], path=[3])
        assert move_exchange_one(st)
        assert len(st.path) == 2 and st.path[-1] == 3
        assert_valid_cycle(g, tuple(st.fixed[0]))

    def test_no_move_below_degree_sum(self):
        g = self.exchange_host(second_probe_degree=1)
        st = SearchState(g, make_profile([6, 6]), fixed_cycles=[[0, 4, 1, 5, 2, 6]], path=[3])
        assert not move_exchange_one(st)


class TestMoveCloseCycle:
    def test_spanning_closure(self):
        g = BipartiteGraph(3, 3, [(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)])
        st = SearchState(g, make_profile([6]), path=[0, 3, 1, 4, 2, 5])
        cyc = move_close_cycle(st)
        assert cyc is not None and len(cyc) == 6

    def test_pool_too_small(self):
        g = gen_complete(2)
        st = SearchState(g, make_profile([6]))
        assert move_close_cycle(st) is None

    def test_crossing_chords(self):
        # 8-vertex path with chords 1-7 and 0-5 and no direct head-tail edge
        edges = [(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7)]
        edges += [(1, 7), (0, 5)]
        g = BipartiteGraph(4, 4, edges)
        st = SearchState(g, make_profile([8]), path=[0, 4, 1, 5, 2, 6, 3, 7])
        cyc = move_close_cycle(st)
        assert cyc is not None and len(cyc) == 8
        assert_valid_cycle(g, tuple(cyc))

    def test_apex_detour(self):
        g = BipartiteGraph(2, 2, [(0, 2), (1, 2), (0, 3), (1, 3)])
        st = SearchState(g, make_profile([4], mode="conjecture"), path=[0, 2, 1])
        cyc = move_close_cycle(st)
        assert cyc is not None and sorted(cyc) == [0, 1, 2, 3]


def concentration_host(saturate_q=True):
    """Three-entry instance on 9+9: two placed 6-cycles and a spanning pool path.

    The path endpoints nearly saturate the first cycle; the six probe vertices
    are (optionally) fully adjacent to the second cycle's opposite sides.
    """
    edges = [(0, 9), (1, 9), (1, 10), (2, 10), (2, 11), (0, 11)]  # cycle A: 0-9-1-10-2-11
    edges += [(3, 12), (4, 12), (4, 13), (5, 13), (5, 14), (3, 14)]  # cycle B: 3-12-4-13-5-14
    edges += [(6, 15), (7, 15), (7, 16), (8, 16), (8, 17)]  # path 6-15-7-16-8-17
    edges += [(6, 9), (6, 10), (6, 11)]  # head saturates cycle A
    edges += [(1, 17), (2, 17)]  # tail misses only vertex 0 of cycle A
    if saturate_q:
        for x_probe in (6, 8, 0):
            edges += [(x_probe, 12), (x_probe, 13), (x_probe, 14)]
        for y_probe in (15, 17, 10):
            edges += [(3, y_probe), (4, y_probe), (5, y_probe)]
    else:
        edges += [(6, 12), (8, 12)]
    return BipartiteGraph(9, 9, edges)


class TestConcentrationAndDoubleExchange:
    def make_state(self, g):
        return SearchState(
            g,
            make_profile([6, 6, 6]),
            fixed_cycles=[[0, 9, 1, 10, 2, 11], [3, 12, 4, 13, 5, 14]],
            path=[6, 15, 7, 16, 8, 17],
        )

    def test_context_selected(self):
        st = self.make_state(concentration_host())
        ctx = select_concentration(st)
        assert ctx == ExchangeContext(p_index=0, q_index=1, x_star=0, y_star=10)

    def test_no_context_without_concentration(self):
        st = self.make_state(concentration_host(saturate_q=False))
        assert select_concentration(st) is None

    def test_no_context_unless_path_spans_pool(self):
        st = self.make_state(concentration_host())
        st.set_path(st.path[:-1])
        assert select_concentration(st) is None

    def test_double_exchange_completes_packing(self):
        g = concentration_host()
        st = self.make_state(g)
        ctx = select_concentration(st)
        cycles = move_double_exchange(st, ctx)
        assert cycles is not None
        report = verify_packing(g, make_profile([6, 6, 6]), cycles)
        assert report.ok, report.to_dict()


class TestPack:
    def test_k33_single_cycle(self):
        r = pack(gen_complete(3), make_profile([6]))
        assert r.status == "packed" and len(r.packing.cycles[0]) == 6

    def test_k66_two_cycles(self):
        r = pack(gen_complete(6), make_profile([6, 6]))
        assert r.status == "packed"
        assert [len(c) for c in r.packing.cycles] == [6, 6]

    def test_sharpness_certified_infeasible(self):
        g, profile = gen_sharpness(2)
        r = pack(g, profile, seed=5)
        assert r.status == "infeasible" and r.oracle_used

    def test_pigeonhole_immediate(self):
        g = BipartiteGraph(3, 3, [(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)])
        r = pack(g, make_profile([6, 6]))
        assert r.status == "infeasible" and not r.oracle_used and r.iterations == 0

    def test_hundred_seeded_instances_all_pack(self):
        profile = make_profile([6, 6])
        for i in range(100):
            g = gen_random_mindeg(6, 6, 5, seed=i)
            r = pack(g, profile, seed=i)
            assert r.status == "packed", f"instance {i} -> {r.status}"
            assert verify_packing(g, profile, r.packing).ok
            assert not r.diagnostics, r.diagnostics

    def test_guaranteed_regime_never_fails_at_oracle_scale(self):
        # inside the hypotheses and within certification scale, pack must
        # always deliver: existence is guaranteed and discovery is backstopped
        cases = [(make_profile([6]), s, 3) for s in (3, 5, 7, 9)]
        cases += [(make_profile([6, 6]), s, 5) for s in (6, 8, 9)]
        cases += [(make_profile([8]), s, 4) for s in (4, 6, 8)]
        for profile, side, delta in cases:
            for seed in range(5):
                g = gen_random_mindeg(side, side, delta, seed=900 + seed)
                r = pack(g, profile, seed=seed)
                assert r.status == "packed", (profile.lengths, side, seed, r.status)

    def test_unknown_beyond_oracle_limit(self):
        # five disjoint 4-cycles on 10+10 vertices contain no 6-cycle at all
        edges = []
        for b in range(5):
            x0, x1, y0, y1 = 2 * b, 2 * b + 1, 10 + 2 * b, 10 + 2 * b + 1
            edges += [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        g = BipartiteGraph(10, 10, edges)
        r = pack(g, make_profile([6]), seed=0)
        assert r.status == "unknown" and not r.oracle_used

    def test_seed_determinism(self):
        g = gen_random_mindeg(8, 8, 4, seed=17)
        a = pack(g, make_profile([6, 6]), seed=2)
        b = pack(g, make_profile([6, 6]), seed=2)
        assert a.status == b.status == "packed"
        assert a.packing == b.packing and a.move_counts == b.move_counts

    def test_trace_is_monotone(self):
        g = gen_random_mindeg(7, 7, 5, seed=23)
        r = pack(g, make_profile([6, 6]), seed=23, record_trace=True)
        assert r.status == "packed" and r.trace
        for kind, before, after in r.trace:
            if after is not None:
                assert after > before, (kind, before, after)

    def test_even_lengths_always(self):
        for i in range(20):
            g = gen_random_mindeg(6, 6, 4, seed=100 + i)
            r = pack(g, make_profile([6, 6]), seed=i)
            if r.packing is not None:
                assert all(len(c) % 2 == 0 for c in r.packing.cycles)


class TestBruteForce:
    def test_k33(self):
        r = brute_force_pack(gen_complete(3), make_profile([6]))
        assert r.status == "packed" and r.oracle_used

    def test_c6_host_cannot_fit_two(self):
        g = BipartiteGraph(3, 3, [(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)])
        assert brute_force_pack(g, make_profile([6, 6])).status == "infeasible"

    def test_sharpness_infeasible(self):
        g, profile = gen_sharpness(2)
        assert brute_force_pack(g, profile).status == "infeasible"

    def test_sharpness_is_critically_tight(self):
        # the construction is edge-maximal for infeasibility: adding any single
        # missing edge makes the packing appear, and lifting the minimum degree
        # to the threshold puts the instance back in the guaranteed regime
        g, profile = gen_sharpness(2)
        for u in range(g.x_size):
            for v in range(g.x_size, g.num_vertices):
                if g.has_edge(u, v):
                    continue
                augmented = BipartiteGraph(g.x_size, g.y_size, list(g.edges()) + [(u, v)])
                assert brute_force_pack(augmented, profile).status == "packed", (u, v)
        lifted = BipartiteGraph(
            g.x_size, g.y_size,
            list(g.edges()) + [(0, 8), (1, 7), (2, 5), (3, 6), (4, 7), (0, 9)],
        )
        assert lifted.min_degree() >= profile.threshold
        assert pack(lifted, profile, seed=0).status == "packed"

    def test_refuses_large_instances(self):
        with pytest.raises(OracleLimitError):
            brute_force_pack(gen_complete(10), make_profile([6]))

    def test_limit_override(self):
        r = brute_force_pack(gen_complete(10), make_profile([6]), oracle_limit=20)
        assert r.status == "packed"

    def test_agrees_with_partition_oracle_sample(self):
        profiles = [
            (make_profile([4], mode="conjecture"), [4]),
            (make_profile([6]), [6]),
            (make_profile([4, 4], mode="conjecture"), [4, 4]),
            (make_profile([4, 6], mode="conjecture"), [4, 6]),
            (make_profile([6, 6]), [6, 6]),
        ]
        for i in range(40):
            rng = random.Random(555 + i)
            side = rng.randint(2, 6)
            delta = rng.randint(0, side)
            g = gen_random_mindeg(side, side, delta, seed=555 + i, fill_p=rng.choice([0.2, 0.5]))
            profile, lengths = profiles[i % len(profiles)]
            mine = brute_force_pack(g, profile).status == "packed"
            theirs = partition_feasible(g.x_size, g.y_size, list(g.edges()), lengths)
            assert mine == theirs, f"instance {i}: oracle {mine} vs partition {theirs}"
