from fractions import Fraction

import numpy as np
import pytest

from hyperfj import (
    InForest,
    WeightedDigraph,
    enumerate_in_forests,
    forest_matrix_bruteforce,
    forest_matrix_exact,
    forest_weight_rooted,
    fundamental_matrix,
)

from conftest import DIGRAPH4_OMEGA_DEN, DIGRAPH4_OMEGA_NUM, random_digraph


class TestEnumerate:
    def test_single_isolated_node(self):
        family = enumerate_in_forests(WeightedDigraph.from_arcs(1, []))
        assert len(family) == 1
        assert family.total_weight == 1

    def test_two_nodes_one_arc(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 3.0)])
        family = enumerate_in_forests(g)
        assert len(family) == 2
        assert family.total_weight == Fraction(4)  # empty forest + the single arc

    def test_four_node_worked_example(self, digraph4):
        family = enumerate_in_forests(digraph4)
        assert len(family) == 26
        assert family.total_weight == Fraction(26)

    def test_empty_three_node_graph(self):
        family = enumerate_in_forests(WeightedDigraph.from_arcs(3, []))
        assert len(family) == 1

    def test_every_forest_is_valid(self, digraph4):
        for forest, w in enumerate_in_forests(digraph4).forests:
            forest.check_valid(digraph4)
            assert w > 0

    def test_forests_are_distinct(self, digraph4):
        seen = {tuple(f.successor) for f, _ in enumerate_in_forests(digraph4).forests}
        assert len(seen) == 26

    def test_size_guard(self):
        with pytest.raises(ValueError, match="refusing"):
            enumerate_in_forests(WeightedDigraph.from_arcs(11, []))

    def test_float_weights_fall_back_to_float(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 0.5)])
        family = enumerate_in_forests(g)
        assert isinstance(family.total_weight, float)
        assert family.total_weight == pytest.approx(1.5)


class TestRootedWeight:
    def test_two_node_all_pairs(self):
        w = 3.0
        g = WeightedDigraph.from_arcs(2, [(0, 1, w)])
        assert forest_weight_rooted(g, 0, 1) == Fraction(3)
        assert forest_weight_rooted(g, 0, 0) == Fraction(1)
        assert forest_weight_rooted(g, 1, 1) == Fraction(4)
        assert forest_weight_rooted(g, 1, 0) == 0

    def test_isolated_self_root(self):
        g = WeightedDigraph.from_arcs(3, [(0, 1, 1.0)])
        assert forest_weight_rooted(g, 2, 2) == enumerate_in_forests(g).total_weight

    def test_worked_example_entry(self, digraph4):
        assert forest_weight_rooted(digraph4, 1, 0) == Fraction(4)

    def test_row_decomposition(self, digraph4):
        total = enumerate_in_forests(digraph4).total_weight
        for i in range(4):
            assert sum(forest_weight_rooted(digraph4, i, j) for j in range(4)) == total


class TestForestMatrix:
    def test_worked_example_exact(self, digraph4):
        exact = forest_matrix_exact(digraph4)
        for i in range(4):
            for j in range(4):
                assert exact[i][j] == Fraction(DIGRAPH4_OMEGA_NUM[i][j], DIGRAPH4_OMEGA_DEN)

    def test_exact_requires_integer_weights(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 0.5)])
        with pytest.raises(ValueError, match="integer"):
            forest_matrix_exact(g)

    def test_empty_graph_gives_identity(self):
        om = forest_matrix_bruteforce(WeightedDigraph.from_arcs(3, [])).omega
        assert np.array_equal(om, np.eye(3))

    def test_matches_inverse_on_random_graphs(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            g = random_digraph(rng, 5)
            brute = forest_matrix_bruteforce(g).omega
            exact = fundamental_matrix(g).omega
            assert np.abs(brute - exact).max() < 1e-9


class TestInForest:
    def test_roots_listing(self):
        f = InForest(successor=np.array([1, -1, -1]), root_of=np.array([1, 1, 2]))
        assert f.roots() == [1, 2]

    def test_check_rejects_foreign_arc(self, digraph4):
        f = InForest(successor=np.array([2, -1, -1, -1]), root_of=np.array([2, 1, 2, 3]))
        with pytest.raises(ValueError, match="not an arc"):
            f.check_valid(digraph4)

    def test_check_rejects_cycle(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 1.0), (1, 0, 1.0)])
        f = InForest(successor=np.array([1, 0]), root_of=np.array([0, 0]))
        with pytest.raises(ValueError, match="cycle"):
            f.check_valid(g)

    def test_check_rejects_wrong_root_label(self, digraph4):
        f = InForest(successor=np.array([1, -1, -1, -1]), root_of=np.array([0, 1, 2, 3]))
        with pytest.raises(ValueError, match="root_of"):
            f.check_valid(digraph4)
