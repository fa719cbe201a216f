"""Exhaustive enumeration of spanning converging forests (the brute-force oracle).

A spanning converging forest assigns each node either no successor (a root) or
one of its out-arcs, with no cycles. The weight of a forest is the product of
its arc weights (1 for the empty forest); summing weights over all forests, or
over the forests that root node i at node j, reproduces the entries of
(I + L)^{-1} as ratios. Enumeration is exponential and guarded to n <= 10.

Weights are carried as exact ``Fraction``s whenever all arc weights are
integer-valued (so unit-weight counts come out exact); otherwise floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .digraph import WeightedDigraph
from .dynamics import FundamentalMatrix

__all__ = [
    "MAX_ENUM_NODES",
    "InForest",
    "ForestFamily",
    "enumerate_in_forests",
    "forest_weight_rooted",
    "forest_matrix_bruteforce",
    "forest_matrix_exact",
]

MAX_ENUM_NODES = 10


@dataclass(frozen=True, eq=False)
class InForest:
    """Per-node successor assignment (-1 marks a root) plus the root label each node drains to."""

    successor: np.ndarray
    root_of: np.ndarray

    @property
    def n(self) -> int:
        return len(self.successor)

    def roots(self) -> list[int]:
        return [i for i in range(self.n) if self.successor[i] == -1]

    def check_valid(self, g: WeightedDigraph) -> None:
        """Raise if the forest uses an arc absent from ``g``, cycles, or mislabels roots."""
        if self.n != g.n:
            raise ValueError("forest size does not match graph")
        for i in range(self.n):
            s = int(self.successor[i])
            if s == -1:
                continue
            targets, _ = g.out_arcs(i)
            if s not in targets:
                raise ValueError(f"successor {i}->{s} is not an arc of the graph")
        for i in range(self.n):
            u, hops = i, 0
            while self.successor[u] != -1:
                u = int(self.successor[u])
                hops += 1
                if hops > self.n:
                    raise ValueError(f"successor chain from {i} cycles")
            if u != int(self.root_of[i]):
                raise ValueError(f"root_of[{i}]={self.root_of[i]} but chain ends at {u}")


@dataclass(frozen=True)
class ForestFamily:
    """All in-forests of a graph with their weights (Fractions in exact mode)."""

    forests: tuple

    @property
    def total_weight(self):
        # weight of an empty *set* of subdigraphs is 0 (never hit for a full
        # enumeration: the all-roots forest always exists)
        return sum(w for _, w in self.forests) if self.forests else 0

    def __len__(self) -> int:
        return len(self.forests)


def _roots_from_successors(succ: list[int]) -> np.ndarray:
    n = len(succ)
    root_of = np.empty(n, dtype=np.int64)
    for i in range(n):
        u = i
        while succ[u] != -1:
            u = succ[u]
        root_of[i] = u
    return root_of


def enumerate_in_forests(g: WeightedDigraph) -> ForestFamily:
    """Enumerate every in-forest exactly once, with its weight."""
    n = g.n
    if n > MAX_ENUM_NODES:
        raise ValueError(f"enumeration is exponential; refusing n={n} > {MAX_ENUM_NODES}")
    exact = g.m == 0 or bool(np.all(g.weights == np.round(g.weights)))
    one = Fraction(1) if exact else 1.0

    options = []  # per node: list of (target, weight), successor choices besides "root"
    for i in range(n):
        targets, weights = g.out_arcs(i)
        row = [
            (int(t), Fraction(int(round(w))) if exact else float(w))
            for t, w in zip(targets, weights)
        ]
        options.append(row)

    succ = [-1] * n
    found: list[tuple[np.ndarray, object]] = []

    def closes_cycle(k: int, target: int) -> bool:
        # nodes > k are not yet assigned, so any cycle through k is fully
        # visible the moment k's arc is chosen
        u = target
        while True:
            if u == k:
                return True
            if u > k or succ[u] == -1:
                return False
            u = succ[u]

    def assign(k: int, weight) -> None:
        if k == n:
            found.append((np.array(succ, dtype=np.int64), weight))
            return
        succ[k] = -1
        assign(k + 1, weight)
        for target, w in options[k]:
            if not closes_cycle(k, target):
                succ[k] = target
                assign(k + 1, weight * w)
        succ[k] = -1

    assign(0, one)
    forests = tuple(
        (InForest(successor=s, root_of=_roots_from_successors(list(s))), w) for s, w in found
    )
    return ForestFamily(forests=forests)


def forest_weight_rooted(g: WeightedDigraph, i: int, j: int):
    """Total weight of the in-forests in which node ``i`` drains to root ``j``."""
    family = enumerate_in_forests(g)
    total = sum((w for forest, w in family.forests if forest.root_of[i] == j), start=0)
    return total


def _matrix_from_family(g: WeightedDigraph, family: ForestFamily):
    n = g.n
    zero = 0 if not family.forests else family.forests[0][1] * 0
    rows = [[zero] * n for _ in range(n)]
    for forest, w in family.forests:
        for i in range(n):
            rows[i][int(forest.root_of[i])] += w
    total = family.total_weight
    return [[v / total for v in row] for row in rows]


def forest_matrix_bruteforce(g: WeightedDigraph) -> FundamentalMatrix:
    """Build (I + L)^{-1} combinatorially from the forest family."""
    entries = _matrix_from_family(g, enumerate_in_forests(g))
    return FundamentalMatrix(omega=np.array([[float(v) for v in row] for row in entries]))


def forest_matrix_exact(g: WeightedDigraph) -> list[list[Fraction]]:
    """Exact rational forest matrix; only valid when all arc weights are integers."""
    if g.m and not np.all(g.weights == np.round(g.weights)):
        raise ValueError("exact rational mode requires integer arc weights")
    return _matrix_from_family(g, enumerate_in_forests(g))
