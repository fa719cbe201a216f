import numpy as np
import pytest

from hyperfj import WeightedDigraph, laplacian_apply, reachable_from, symmetrize_check
from hyperfj import Hyperedge, Hypergraph, project_directed

from conftest import random_digraph


class TestConstruction:
    def test_parallel_arcs_merge(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 1.0), (0, 1, 2.5)])
        assert g.m == 1
        assert g.weights[0] == 3.5

    def test_zero_weight_dropped_after_merge(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 0.0)])
        assert g.m == 0

    def test_self_arc_rejected(self):
        with pytest.raises(ValueError, match="self-arc"):
            WeightedDigraph.from_arcs(2, [(1, 1, 1.0)])

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            WeightedDigraph.from_arcs(2, [(0, 1, -1.0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            WeightedDigraph.from_arcs(2, [(0, 2, 1.0)])

    def test_round_trip(self):
        rng = np.random.default_rng(0)
        g = random_digraph(rng, 8)
        g2 = WeightedDigraph.from_arcs(g.n, g.arcs())
        assert np.array_equal(g.indptr, g2.indptr)
        assert np.array_equal(g.targets, g2.targets)
        assert np.array_equal(g.weights, g2.weights)

    def test_out_degree_and_prefix_sums(self):
        rng = np.random.default_rng(1)
        g = random_digraph(rng, 10)
        for i in range(g.n):
            lo, hi = g.indptr[i], g.indptr[i + 1]
            assert g.out_degree[i] == pytest.approx(g.weights[lo:hi].sum(), abs=1e-12)
            if lo < hi:
                cum = g.cumweights[lo:hi]
                assert np.all(np.diff(cum) >= 0)
                assert cum[-1] == pytest.approx(g.out_degree[i], abs=1e-12)


class TestLaplacianApply:
    def test_ones_vector_vanishes(self):
        rng = np.random.default_rng(2)
        g = random_digraph(rng, 12)
        out = laplacian_apply(g, np.ones(12))
        assert np.abs(out).max() < 1e-12

    def test_empty_graph(self):
        g = WeightedDigraph.from_arcs(3, [])
        assert np.array_equal(laplacian_apply(g, np.array([1.0, 2.0, 3.0])), np.zeros(3))

    def test_single_arc(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 2.5)])
        out = laplacian_apply(g, np.array([1.0, 0.0]))
        assert out == pytest.approx([2.5, 0.0])

    def test_matches_dense(self):
        rng = np.random.default_rng(3)
        g = random_digraph(rng, 9)
        v = rng.random(9)
        dense = np.diag(g.out_degree) - g.to_dense()
        assert laplacian_apply(g, v) == pytest.approx(dense @ v, abs=1e-12)

    def test_dimension_mismatch(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 1.0)])
        with pytest.raises(ValueError):
            laplacian_apply(g, np.ones(3))


class TestReachability:
    def test_isolated(self):
        g = WeightedDigraph.from_arcs(3, [])
        assert reachable_from(g, 1) == {1}

    def test_chain_forward(self):
        g = WeightedDigraph.from_arcs(3, [(0, 1, 1.0), (1, 2, 1.0)])
        assert reachable_from(g, 0) == {0, 1, 2}

    def test_chain_backward(self):
        g = WeightedDigraph.from_arcs(3, [(0, 1, 1.0), (1, 2, 1.0)])
        assert reachable_from(g, 2) == {2}

    def test_out_of_range(self):
        g = WeightedDigraph.from_arcs(2, [])
        with pytest.raises(ValueError):
            reachable_from(g, 2)


class TestSymmetrizeCheck:
    def test_single_arc_asymmetric(self):
        assert not symmetrize_check(WeightedDigraph.from_arcs(2, [(0, 1, 1.0)]))

    def test_symmetric_pair(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 1.5), (1, 0, 1.5)])
        assert symmetrize_check(g)

    def test_weight_mismatch(self):
        g = WeightedDigraph.from_arcs(2, [(0, 1, 1.5), (1, 0, 1.5 + 1e-6)])
        assert not symmetrize_check(g)

    def test_uneven_fractions_break_symmetry(self):
        h = Hypergraph(3, (Hyperedge((0, 1, 2), 1.0, (0.5, 0.3, 0.2)),))
        assert not symmetrize_check(project_directed(h))
