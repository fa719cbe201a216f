"""Project a hypergraph onto a weighted (di)graph.

Each size-s hyperedge of weight h becomes, in the undirected clique projection,
s(s-1)/2 edges of weight 2h/(s(s-1)); in the directed projection it becomes
s(s-1) arcs where the arc into member j carries weight 2*h*gamma(j)/(s-1).
The clique projection is exactly the directed one evaluated at homogeneous
fractions, and both conserve total arc weight: the sum over all arcs equals
twice the total hyperedge weight.
"""

from __future__ import annotations

from .digraph import WeightedDigraph
from .hypergraph import Hypergraph, validate

__all__ = ["project_clique", "project_directed", "InvalidHypergraphError"]


class InvalidHypergraphError(ValueError):
    """Raised when a projection is asked for on a hypergraph that fails validation."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid hypergraph: " + "; ".join(violations))


def _project(h: Hypergraph, directed: bool) -> WeightedDigraph:
    violations = validate(h)
    violations += [
        f"edge {k}: size {e.size} < 2 (filter singletons first)"
        for k, e in enumerate(h.edges)
        if e.size < 2
    ]
    if violations:
        raise InvalidHypergraphError(violations)

    # accumulate in hyperedge order so the summation order is deterministic
    acc: dict[tuple[int, int], float] = {}
    for e in h.edges:
        s = e.size
        for b, j in enumerate(e.members):
            g = e.gamma[b] if directed else 1.0 / s
            contrib = 2.0 * e.weight * g / (s - 1)
            for i in e.members:
                if i != j:
                    key = (i, j)
                    acc[key] = acc.get(key, 0.0) + contrib
    arcs = ((i, j, w) for (i, j), w in acc.items() if w > 0.0)
    return WeightedDigraph.from_arcs(h.n, arcs)


def project_clique(h: Hypergraph) -> WeightedDigraph:
    """Undirected clique projection, stored as a symmetric digraph."""
    return _project(h, directed=False)


def project_directed(h: Hypergraph) -> WeightedDigraph:
    """Directed projection; arc weight into a member scales with its contribution fraction."""
    return _project(h, directed=True)
