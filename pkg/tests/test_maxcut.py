import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqopt.maxcut import (
    CutAssignment,
    WeightedGraph,
    basin_counts,
    brute_force_max,
    greedy_search,
    payoff,
    payoff_table,
)

PAPER_TABLE = [0, 6, 7, 7, 5, 9, 8, 6]


def paper():
    return WeightedGraph(3, (2, 2, 2), ((0, 1, 2.0), (0, 2, 1.0), (1, 2, 3.0)))


def random_graph(rng, n):
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.7:
                edges.append((i, j, float(rng.normal())))
    return WeightedGraph(n, tuple(rng.normal(size=n)), tuple(edges))


class TestPayoff:
    def test_global_maximum(self):
        assert payoff(paper(), 0b101) == 9.0

    def test_all_zero_assignment(self):
        assert payoff(paper(), 0b000) == 0.0

    def test_local_maximum(self):
        assert payoff(paper(), 0b110) == 8.0

    def test_table(self):
        assert np.array_equal(payoff_table(paper()).values, PAPER_TABLE)

    def test_zero_weights_table(self):
        g = WeightedGraph(3, (0, 0, 0), ())
        assert np.array_equal(payoff_table(g).values, np.zeros(8))

    def test_min_weight_edge_uncut_without_node_weights(self):
        # with zero node weights and w23 the smallest edge, the best cuts
        # isolate node 1: s = 100 and its complement 011
        g = WeightedGraph(3, (0, 0, 0), ((0, 1, 2.0), (0, 2, 3.0), (1, 2, 1.0)))
        argmax, best = brute_force_max(g)
        assert argmax == (0b011, 0b100)
        assert best == 5.0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            payoff(paper(), 8)

    def test_cut_assignment_argument(self):
        assert payoff(paper(), CutAssignment.from_string("101")) == 9.0

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=40, deadline=None)
    def test_complement_symmetry_without_node_weights(self, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(rng, 4)
        g = WeightedGraph(g.n, (0.0,) * g.n, g.edges)
        mask = (1 << g.n) - 1
        for s in range(1 << g.n):
            assert payoff(g, s) == pytest.approx(payoff(g, mask ^ s), abs=1e-12)


class TestBruteForce:
    def test_paper_instance(self):
        assert brute_force_max(paper()) == ((0b101,), 9.0)

    def test_all_zero_weights(self):
        argmax, best = brute_force_max(WeightedGraph(3, (0, 0, 0), ()))
        assert argmax == tuple(range(8))
        assert best == 0.0

    def test_single_node(self):
        assert brute_force_max(WeightedGraph(1, (5.0,), ())) == ((1,), 5.0)

    def test_enumeration_guard(self):
        g = WeightedGraph(21, (0.0,) * 21, ())
        with pytest.raises(ValueError):
            payoff_table(g)

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=30, deadline=None)
    def test_consistent_with_table(self, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(rng, 3)
        argmax, best = brute_force_max(g)
        table = payoff_table(g).values
        assert best == table.max()
        assert table[list(argmax)] == pytest.approx(best)


class TestGreedy:
    def test_start_001_reaches_global_max(self):
        res = greedy_search(paper(), 0b001)
        assert res.endpoint == 0b101
        assert res.path == (0b001, 0b101)

    def test_start_000_reaches_local_max(self):
        res = greedy_search(paper(), 0b000)
        assert res.endpoint == 0b110
        assert res.path == (0b000, 0b010, 0b110)

    def test_accept_equal_basins_split_half(self):
        assert basin_counts(paper(), "accept-equal") == {0b101: 4, 0b110: 4}

    def test_strict_basins(self):
        assert basin_counts(paper(), "strict") == {0b011: 1, 0b101: 4, 0b110: 3}

    def test_plateau_escape_path(self):
        res = greedy_search(paper(), 0b011, rule="accept-equal")
        assert res.path == (0b011, 0b010, 0b110)

    def test_strict_stops_on_plateau(self):
        res = greedy_search(paper(), 0b011, rule="strict")
        assert res.endpoint == 0b011
        assert res.path == (0b011,)

    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            greedy_search(paper(), 0, rule="stochastic")

    @given(st.integers(0, 2**31 - 1), st.integers(0, 15))
    @settings(max_examples=40, deadline=None)
    def test_path_payoffs_monotone_and_endpoint_local_max(self, seed, start):
        rng = np.random.default_rng(seed)
        g = random_graph(rng, 4)
        for rule in ("strict", "accept-equal"):
            res = greedy_search(g, start, rule=rule)
            diffs = np.diff(res.payoffs)
            assert (diffs >= 0).all()
            if rule == "strict":
                assert (diffs > 0).all()
            # endpoint admits no strictly improving single-bit flip
            p_end = payoff(g, res.endpoint)
            for i in range(g.n):
                assert payoff(g, res.endpoint ^ (1 << (g.n - 1 - i))) <= p_end + 1e-12


class TestGraphValidation:
    def test_duplicate_edge(self):
        with pytest.raises(ValueError):
            WeightedGraph(3, (0, 0, 0), ((0, 1, 1.0), (1, 0, 2.0)))

    def test_self_loop(self):
        with pytest.raises(ValueError):
            WeightedGraph(3, (0, 0, 0), ((1, 1, 1.0),))

    def test_edge_out_of_range(self):
        with pytest.raises(ValueError):
            WeightedGraph(2, (0, 0), ((0, 2, 1.0),))

    def test_weight_count_mismatch(self):
        with pytest.raises(ValueError):
            WeightedGraph(3, (1.0, 2.0), ())

    def test_non_finite_weight(self):
        with pytest.raises(ValueError):
            WeightedGraph(2, (0.0, float("nan")), ())

    def test_edges_canonicalized(self):
        g = WeightedGraph(3, (0, 0, 0), ((2, 0, 1.5),))
        assert g.edges == ((0, 2, 1.5),)
        assert g.edge_weight(2, 0) == 1.5
        assert g.edge_weight(0, 1) == 0.0

    def test_json_round_trip(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps(paper().to_dict()))
        assert WeightedGraph.from_json(path) == paper()

    def test_cut_assignment_validation(self):
        with pytest.raises(ValueError):
            CutAssignment(3, 8)
        assert CutAssignment(3, 5).bits == (1, 0, 1)
        assert str(CutAssignment(3, 5)) == "101"
