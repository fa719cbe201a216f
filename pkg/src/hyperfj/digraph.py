"""Compact weighted-digraph storage shared by the exact solver and the sampler.

Arcs are kept in compressed per-source form (CSR): ``targets[indptr[i]:indptr[i+1]]``
are the out-neighbours of node ``i`` and ``weights`` the matching arc weights.
``cumweights`` holds the per-row running sums of the weights, which is what the
forest sampler bisects when it draws a random successor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

__all__ = ["WeightedDigraph", "laplacian_apply", "reachable_from", "symmetrize_check"]


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Immutable weighted digraph with positive arc weights and no self-arcs."""

    n: int
    indptr: np.ndarray
    targets: np.ndarray
    weights: np.ndarray
    out_degree: np.ndarray = field(repr=False, default=None)
    cumweights: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.cumweights is None:
            # row-local running sums; a global cumsum minus row offsets would
            # lose ulps of the overall total to cancellation on big graphs
            cum = np.empty(self.m)
            for i in range(self.n):
                lo, hi = self.indptr[i], self.indptr[i + 1]
                if lo < hi:
                    cum[lo:hi] = np.cumsum(self.weights[lo:hi])
            object.__setattr__(self, "cumweights", cum)
        if self.out_degree is None:
            deg = np.zeros(self.n)
            nonempty = np.diff(self.indptr) > 0
            deg[nonempty] = self.cumweights[self.indptr[1:][nonempty] - 1]
            object.__setattr__(self, "out_degree", deg)
        assert self.indptr.shape == (self.n + 1,)
        if self.m:
            nonempty = np.diff(self.indptr) > 0
            ends = self.cumweights[self.indptr[1:][nonempty] - 1]
            assert np.allclose(ends, self.out_degree[nonempty], atol=1e-12, rtol=1e-12)

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "WeightedDigraph":
        """Build from an iterable of ``(source, target, weight)``.

        Parallel arcs between the same ordered pair are merged by weight
        summation; zero-weight arcs are dropped after merging. Self-arcs and
        negative weights are rejected.
        """
        merged: dict[tuple[int, int], float] = {}
        for i, j, w in arcs:
            i, j, w = int(i), int(j), float(w)
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"arc ({i},{j}) endpoint out of range for n={n}")
            if i == j:
                raise ValueError(f"self-arc at node {i}")
            if w < 0:
                raise ValueError(f"negative weight {w} on arc ({i},{j})")
            key = (i, j)
            merged[key] = merged.get(key, 0.0) + w
        keys = sorted(k for k, w in merged.items() if w > 0.0)
        m = len(keys)
        indptr = np.zeros(n + 1, dtype=np.int64)
        targets = np.empty(m, dtype=np.int64)
        weights = np.empty(m, dtype=np.float64)
        for pos, (i, j) in enumerate(keys):
            indptr[i + 1] += 1
            targets[pos] = j
            weights[pos] = merged[(i, j)]
        np.cumsum(indptr, out=indptr)
        return cls(n=n, indptr=indptr, targets=targets, weights=weights)

    @property
    def m(self) -> int:
        return len(self.targets)

    def arcs(self):
        """Yield ``(source, target, weight)`` triples in (source, target) order."""
        for i in range(self.n):
            for pos in range(self.indptr[i], self.indptr[i + 1]):
                yield i, int(self.targets[pos]), float(self.weights[pos])

    def adjacency(self) -> sp.csr_matrix:
        """Sparse adjacency matrix view over the internal buffers."""
        return sp.csr_matrix((self.weights, self.targets, self.indptr), shape=(self.n, self.n))

    def to_dense(self) -> np.ndarray:
        return self.adjacency().toarray()

    def laplacian(self) -> sp.csr_matrix:
        return sp.diags(self.out_degree) - self.adjacency()

    def out_arcs(self, i: int):
        """(targets, weights) arrays of node ``i``'s out-arcs."""
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.targets[lo:hi], self.weights[lo:hi]


def laplacian_apply(g: WeightedDigraph, v) -> np.ndarray:
    """Apply the Laplacian (out-degree diagonal minus adjacency) to a vector."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (g.n,):
        raise ValueError(f"vector length {v.shape} does not match n={g.n}")
    if g.m == 0:
        return np.zeros(g.n)
    return g.out_degree * v - g.adjacency().dot(v)


def reachable_from(g: WeightedDigraph, i: int) -> set[int]:
    """Set of nodes reachable from ``i`` along directed paths, including ``i``."""
    if not 0 <= i < g.n:
        raise ValueError(f"node {i} out of range")
    seen = {i}
    queue = deque([i])
    while queue:
        u = queue.popleft()
        for t in g.targets[g.indptr[u]:g.indptr[u + 1]]:
            t = int(t)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def symmetrize_check(g: WeightedDigraph, tol: float = 1e-12) -> bool:
    """True iff every arc has a reverse arc of equal weight within ``tol``."""
    a = g.adjacency()
    diff = a - a.T
    return diff.nnz == 0 or np.max(np.abs(diff.data)) <= tol
