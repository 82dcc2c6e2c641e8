import random

import pytest

from cyclepack import (
    BipartiteGraph,
    GraphError,
    ParseError,
    gen_complete,
    gen_random_mindeg,
    gen_sharpness,
    parse_graph,
    serialize_graph,
)


def path_graph():
    # a - b - c with a, c on the X side (a=0, c=1, b=2)
    return BipartiteGraph(2, 1, [(0, 2), (1, 2)])


class TestConstruction:
    def test_rejects_intra_side_edge(self):
        with pytest.raises(GraphError):
            BipartiteGraph(2, 2, [(0, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(GraphError):
            BipartiteGraph(2, 2, [(0, 2), (0, 2)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            BipartiteGraph(2, 2, [(0, 7)])

    def test_adjacency_symmetry(self):
        g = gen_complete(3)
        for u in range(g.num_vertices):
            for v in range(g.num_vertices):
                assert g.has_edge(u, v) == g.has_edge(v, u)

    def test_degree_sums(self):
        g = gen_random_mindeg(5, 5, 2, seed=3)
        x_sum = sum(g.degree(v) for v in range(g.x_size))
        y_sum = sum(g.degree(v) for v in range(g.x_size, g.num_vertices))
        assert x_sum == y_sum == g.edge_count


class TestDegreeQueries:
    def test_complete_degree(self):
        g = gen_complete(3)
        assert all(g.degree(v) == 3 for v in range(6))

    def test_empty_graph_degree(self):
        g = BipartiteGraph(2, 2, [])
        assert all(g.degree(v) == 0 for v in range(4))

    def test_sharpness_special_vertex_degree(self):
        # u is adjacent to the k vertices of Y1 plus v
        g, _ = gen_sharpness(2)
        u = 2 * 2
        assert g.degree(u) == 3
        assert sorted(g.neighbors(u)) == [5, 6, 9]  # Y1 = {5,6}, v = 9

    def test_degree_invalid_vertex(self):
        with pytest.raises(GraphError):
            gen_complete(2).degree(99)

    def test_degree_in_full_side(self):
        g = gen_complete(3)
        assert g.degree_in(0, g.y_mask) == 3
        assert g.degree_in(0, g.x_mask) == 0

    def test_degree_in_path(self):
        g = path_graph()
        assert g.degree_in(2, 1 << 0) == 1

    def test_degree_in_equals_degree_on_full_set(self):
        g = gen_random_mindeg(4, 4, 2, seed=9)
        for v in range(g.num_vertices):
            assert g.degree_in(v, g.full_mask) == g.degree(v)

    def test_min_degree_complete(self):
        assert gen_complete(4).min_degree() == 4

    def test_min_degree_complete_minus_matching(self):
        m = 4
        edges = [(u, m + v) for u in range(m) for v in range(m) if u != v]
        assert BipartiteGraph(m, m, edges).min_degree() == 3

    def test_min_degree_sharpness(self):
        g, _ = gen_sharpness(2)
        assert g.min_degree() == 3

    def test_min_degree_empty_graph(self):
        with pytest.raises(GraphError):
            BipartiteGraph(0, 0, []).min_degree()


class TestInduced:
    def test_single_edge(self):
        g = gen_complete(3)
        view = g.induced(1 << 0 | 1 << 3)
        assert view.degree(0) == 1 and view.degree(3) == 1
        assert list(view.edges()) == [(0, 3)]

    def test_identity(self):
        g = gen_random_mindeg(4, 4, 2, seed=5)
        view = g.induced(g.full_mask)
        assert sorted(view.edges()) == sorted(g.edges())

    def test_cycle_minus_arc_is_path(self):
        # C8 with X = {0..3}, Y = {4..7}
        g = BipartiteGraph(4, 4, [(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (0, 7)])
        members = [0, 4, 1, 5, 2, 6]
        view = g.induced(sum(1 << v for v in members))
        degrees = sorted(view.degree(v) for v in members)
        assert degrees == [1, 1, 2, 2, 2, 2]

    def test_membership_validation(self):
        g = gen_complete(2)
        view = g.induced(1 << 0)
        with pytest.raises(GraphError):
            view.degree(1)


class TestParseSerialize:
    def test_parse_k22(self):
        text = "p bip 2 2 4\ne 0 2\ne 0 3\ne 1 2\ne 1 3\n"
        g = parse_graph(text)
        assert g == gen_complete(2)

    def test_parse_isolated_vertices(self):
        g = parse_graph("p bip 1 1 0\n")
        assert g.num_vertices == 2 and g.edge_count == 0

    def test_parse_intra_side_edge_fails_with_line(self):
        with pytest.raises(ParseError) as err:
            parse_graph("p bip 2 2 1\ne 0 1\n")
        assert err.value.line_no == 2

    def test_parse_duplicate_edge(self):
        with pytest.raises(ParseError):
            parse_graph("p bip 2 2 2\ne 0 2\ne 0 2\n")

    def test_parse_bad_header(self):
        with pytest.raises(ParseError):
            parse_graph("p graph 2 2 1\ne 0 2\n")

    def test_parse_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_graph("p bip 2 2 3\ne 0 2\n")

    def test_parse_comments_and_bytes(self):
        g = parse_graph(b"c hello\np bip 1 1 1\nc mid\ne 0 1\n")
        assert g.edge_count == 1

    def test_serialize_round_trip_k33(self):
        g = gen_complete(3)
        assert parse_graph(serialize_graph(g)) == g

    def test_serialize_empty(self):
        g = BipartiteGraph(1, 1, [])
        assert serialize_graph(g) == "p bip 1 1 0\n"

    def test_round_trip_random_graphs(self):
        rng = random.Random(12345)
        for _ in range(100):
            x = rng.randint(1, 6)
            y = rng.randint(1, 6)
            edges = [
                (u, x + v)
                for u in range(x)
                for v in range(y)
                if rng.random() < 0.4
            ]
            g = BipartiteGraph(x, y, edges)
            again = parse_graph(serialize_graph(g))
            assert again == g


class TestGenerators:
    def test_complete_sizes(self):
        assert gen_complete(3).edge_count == 9
        assert gen_complete(3).min_degree() == 3
        assert gen_complete(1).edge_count == 1
        assert gen_complete(5).edge_count == 25

    def test_complete_zero_rejected(self):
        with pytest.raises(GraphError):
            gen_complete(0)

    def test_random_full_delta_forces_complete(self):
        assert gen_random_mindeg(6, 6, 6, seed=1) == gen_complete(6)

    def test_random_zero_delta(self):
        g = gen_random_mindeg(4, 4, 0, seed=1)
        assert g.min_degree() >= 0

    def test_random_respects_delta(self):
        assert gen_random_mindeg(6, 6, 5, seed=42).min_degree() >= 5

    def test_random_seed_determinism(self):
        a = gen_random_mindeg(6, 6, 3, seed=7)
        b = gen_random_mindeg(6, 6, 3, seed=7)
        c = gen_random_mindeg(6, 6, 3, seed=8)
        assert a == b
        assert a != c

    def test_random_min_degree_property(self):
        rng = random.Random(777)
        for trial in range(60):
            x = rng.randint(2, 7)
            y = rng.randint(2, 7)
            d = rng.randint(0, min(x, y))
            g = gen_random_mindeg(x, y, d, seed=trial, fill_p=rng.choice([0.1, 0.5, 0.9]))
            assert g.min_degree() >= d
            assert all((u < x) != (v < x) for u, v in g.edges())

    def test_random_infeasible_delta(self):
        with pytest.raises(GraphError):
            gen_random_mindeg(3, 5, 4, seed=0)

    def test_sharpness_k2(self):
        g, profile = gen_sharpness(2)
        assert g.num_vertices == 10
        assert g.min_degree() == 3
        assert sorted(profile.lengths) == [4, 6]
        assert profile.mode == "conjecture"

    def test_sharpness_k4(self):
        g, profile = gen_sharpness(4)
        assert g.num_vertices == 18
        assert g.min_degree() == 5
        assert sorted(profile.lengths) == [4, 4, 4, 6]

    def test_sharpness_vertex_budget(self):
        for k in (2, 4, 6):
            g, _ = gen_sharpness(k)
            assert g.num_vertices == 4 * k + 2
            assert g.min_degree() == k + 1

    def test_sharpness_rejects_odd_or_small(self):
        with pytest.raises(GraphError):
            gen_sharpness(3)
        with pytest.raises(GraphError):
            gen_sharpness(0)
