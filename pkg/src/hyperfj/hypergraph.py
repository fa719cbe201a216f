"""Weighted hypergraphs with per-hyperedge member contribution fractions.

A hyperedge couples a group of nodes; its ``gamma`` vector says how much each
member contributes to the group (fractions sum to 1 within each hyperedge).
This module also carries the input generators used in the experiments:
power-law contribution fractions, uniform random opinions, and synthetic
hypergraphs for benchmarking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Hyperedge",
    "Hypergraph",
    "validate",
    "filter_singletons",
    "uniform_gamma",
    "powerlaw_gamma",
    "unit_edge_weights",
    "random_opinions",
    "normalize_gamma",
    "synthetic_hypergraph",
    "GAMMA_SUM_TOL",
    "GAMMA_RENORM_TOL",
]

# invariant tolerance for sum(gamma) == 1; ingestion renormalizes up to the looser bound
GAMMA_SUM_TOL = 1e-9
GAMMA_RENORM_TOL = 1e-6


def _rng(seed: int) -> np.random.Generator:
    # accept any 64-bit integer, including negatives
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


@dataclass(frozen=True)
class Hyperedge:
    """A weighted group interaction among ``members`` with contribution fractions ``gamma``.

    ``gamma`` is aligned with ``members``; omitting it yields the homogeneous
    case where every member contributes ``1/len(members)``.
    """

    members: tuple[int, ...]
    weight: float = 1.0
    gamma: tuple[float, ...] = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(v) for v in self.members))
        object.__setattr__(self, "weight", float(self.weight))
        if self.gamma is None:
            k = len(self.members)
            object.__setattr__(self, "gamma", tuple([1.0 / k] * k) if k else ())
        else:
            object.__setattr__(self, "gamma", tuple(float(v) for v in self.gamma))
        if len(self.gamma) != len(self.members):
            raise ValueError(
                f"gamma length {len(self.gamma)} does not match {len(self.members)} members"
            )

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Hypergraph:
    """Node count plus hyperedges; nodes in no hyperedge are allowed."""

    n: int
    edges: tuple[Hyperedge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def normalize_gamma(raw: Sequence[float], where: str = "") -> tuple[float, ...]:
    """Renormalize fractions whose sum is within 1e-6 of 1; reject anything further off."""
    total = float(sum(raw))
    if abs(total - 1.0) > GAMMA_RENORM_TOL:
        raise ValueError(f"contribution fractions sum to {total}, too far from 1{where}")
    return tuple(v / total for v in raw)


def validate(h: Hypergraph) -> list[str]:
    """Return every invariant breach with its location; empty when valid.

    Diagnostic only: never raises, never mutates. Singleton hyperedges are not
    flagged here because raw datasets legitimately contain them before
    filtering; the projections enforce size >= 2 themselves.
    """
    violations = []
    for k, e in enumerate(h.edges):
        if len(e.members) == 0:
            violations.append(f"edge {k}: empty member list")
            continue
        if len(set(e.members)) != len(e.members):
            violations.append(f"edge {k}: duplicate members in {e.members}")
        if e.weight <= 0:
            violations.append(f"edge {k}: nonpositive weight {e.weight}")
        bad = [i for i in e.members if not 0 <= i < h.n]
        if bad:
            violations.append(f"edge {k}: member indices {bad} out of range for n={h.n}")
        if any(v < 0 for v in e.gamma):
            violations.append(f"edge {k}: negative contribution fraction in {e.gamma}")
        gsum = sum(e.gamma)
        if abs(gsum - 1.0) > GAMMA_SUM_TOL:
            violations.append(f"edge {k}: contribution fractions sum to {gsum} != 1")
    return violations


def filter_singletons(h: Hypergraph) -> Hypergraph:
    """Drop hyperedges with fewer than two members; node count is unchanged."""
    return Hypergraph(n=h.n, edges=tuple(e for e in h.edges if e.size >= 2))


def uniform_gamma(h: Hypergraph) -> Hypergraph:
    """Replace every hyperedge's fractions by the homogeneous 1/|e| each."""
    return Hypergraph(
        n=h.n,
        edges=tuple(Hyperedge(e.members, e.weight, None) for e in h.edges),
    )


def powerlaw_gamma(h: Hypergraph, seed: int) -> Hypergraph:
    """Draw heavy-tailed contribution fractions for every hyperedge.

    Per hyperedge, one raw value per member is drawn from the density
    proportional to x**-2 on [1, inf) (inverse transform: 1/u for u uniform in
    (0, 1]) and the raws are normalized to sum 1. Draws are independent across
    hyperedges, so a node generally gets different fractions in different
    hyperedges. Deterministic for a fixed seed.
    """
    rng = _rng(seed)
    edges = []
    for e in h.edges:
        u = 1.0 - rng.random(e.size)
        raw = 1.0 / u
        gamma = raw / raw.sum()
        assert abs(gamma.sum() - 1.0) <= GAMMA_SUM_TOL
        edges.append(Hyperedge(e.members, e.weight, tuple(gamma)))
    return Hypergraph(n=h.n, edges=tuple(edges))


def unit_edge_weights(h: Hypergraph) -> Hypergraph:
    """Set every hyperedge weight to 1."""
    return Hypergraph(n=h.n, edges=tuple(Hyperedge(e.members, 1.0, e.gamma) for e in h.edges))


def random_opinions(n: int, seed: int) -> np.ndarray:
    """Length-n vector of i.i.d. uniform [0, 1) internal opinions."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _rng(seed).random(n)


def synthetic_hypergraph(
    n: int,
    num_edges: int,
    seed: int,
    min_size: int = 2,
    max_size: int = 6,
) -> Hypergraph:
    """Random hypergraph with unit weights and homogeneous fractions.

    Member sets are sampled without replacement, so hyperedges are valid by
    construction. Used by the benchmark ladder and the randomized tests.
    """
    if n < max_size:
        raise ValueError(f"need at least {max_size} nodes")
    rng = _rng(seed)
    edges = []
    for _ in range(num_edges):
        size = int(rng.integers(min_size, max_size + 1))
        members = rng.choice(n, size=size, replace=False)
        edges.append(Hyperedge(tuple(int(v) for v in members), 1.0, None))
    return Hypergraph(n=n, edges=tuple(edges))
