import numpy as np
import pytest

from hyperfj import Hyperedge, Hypergraph, WeightedDigraph, estimate, SamplerConfig


@pytest.fixture
def digraph4() -> WeightedDigraph:
    """4-node, 6-arc unit-weight digraph whose forest census is known by hand.

    It has 26 in-forests and its forest matrix is (1/26) * [[12,4,2,8],
    [4,10,5,7],[6,2,14,4],[6,2,1,17]].
    """
    arcs = [(0, 1, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 0, 1.0), (3, 0, 1.0)]
    return WeightedDigraph.from_arcs(4, arcs)


DIGRAPH4_OMEGA_NUM = [[12, 4, 2, 8], [4, 10, 5, 7], [6, 2, 14, 4], [6, 2, 1, 17]]
DIGRAPH4_OMEGA_DEN = 26


@pytest.fixture
def hypergraph6() -> Hypergraph:
    """Six nodes, four hyperedges with heterogeneous contribution fractions.

    Small enough to solve by hand yet rich enough to make the directed
    projection genuinely asymmetric (the pair {0,1} shares two hyperedges).
    """
    return Hypergraph(
        6,
        (
            Hyperedge((0, 1), 1.0, (0.7, 0.3)),
            Hyperedge((0, 1, 3), 1.0, (0.5, 0.3, 0.2)),
            Hyperedge((1, 2, 4), 1.0, (0.3, 0.2, 0.5)),
            Hyperedge((0, 2, 5), 1.0, (0.5, 0.3, 0.2)),
        ),
    )


def random_digraph(rng: np.random.Generator, n: int, arc_prob: float = 0.5,
                   max_weight: float = 2.0) -> WeightedDigraph:
    arcs = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < arc_prob:
                w = max_weight * (1.0 - rng.random())  # uniform in (0, max_weight]
                arcs.append((i, j, w))
    return WeightedDigraph.from_arcs(n, arcs)


@pytest.fixture(scope="session", autouse=True)
def warm_sampler():
    """Compile the sampling kernels once so timed tests never pay JIT cost."""
    g = WeightedDigraph.from_arcs(2, [(0, 1, 1.0)])
    estimate(g, np.array([0.0, 1.0]), SamplerConfig(tau=2, seed=0))
    from hyperfj import estimator_stderr, root_frequencies, sample_forest

    estimator_stderr(g, np.array([0.0, 1.0]), SamplerConfig(tau=2, seed=0))
    root_frequencies(g, SamplerConfig(tau=2, seed=0))
    sample_forest(g, seed=0)
