"""Exact machinery for the opinion dynamics: updates, equilibrium, trust matrix, metrics.

Each node holds a fixed internal opinion and an expressed opinion that it
repeatedly replaces by the convex combination of its internal opinion (unit
weight) and its out-neighbours' expressed opinions (arc weights). The unique
fixed point solves (I + L) z = x, so the mapping from internal to equilibrium
expressed opinions is the row-stochastic matrix (I + L)^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .digraph import WeightedDigraph

__all__ = [
    "DENSE_LIMIT_DEFAULT",
    "EquilibriumReport",
    "FundamentalMatrix",
    "IterationResult",
    "GraphTooLargeError",
    "NonConvergenceError",
    "fj_step",
    "fj_iterate",
    "exact_equilibrium",
    "fundamental_matrix",
    "polarization",
    "overall_opinion",
]

DENSE_LIMIT_DEFAULT = 50_000

# above this node count the one-shot solve switches from a dense to a sparse LU
_SPARSE_SOLVE_CUTOVER = 600


class GraphTooLargeError(ValueError):
    """Graph exceeds the direct-solve node limit; use the sampling estimator instead."""


class NonConvergenceError(RuntimeError):
    """Iteration budget exhausted before reaching the requested tolerance."""


@dataclass(frozen=True, eq=False)
class FundamentalMatrix:
    """Dense (I + L)^{-1}: row i gives how much each internal opinion steers node i."""

    omega: np.ndarray

    def __post_init__(self):
        om = self.omega
        n = om.shape[0]
        if om.shape != (n, n):
            raise ValueError("matrix must be square")
        if om.size and om.min() < -1e-12:
            raise RuntimeError(f"negative trust entry {om.min()}; inverse is corrupt")
        if om.size and np.abs(om.sum(axis=1) - 1.0).max() > 1e-9:
            raise RuntimeError("rows do not sum to 1; inverse is corrupt")

    @property
    def n(self) -> int:
        return self.omega.shape[0]


@dataclass(frozen=True, eq=False)
class EquilibriumReport:
    z: np.ndarray
    overall: float
    polarization: float


@dataclass(frozen=True, eq=False)
class IterationResult:
    z: np.ndarray
    iterations: int


def _check_vector(g: WeightedDigraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"opinion vector has shape {x.shape}, expected ({g.n},)")
    return x


def fj_step(g: WeightedDigraph, x, z_k) -> np.ndarray:
    """One synchronous update: each node averages its internal opinion with its neighbours'.

    Isolated nodes (no out-arcs) return their internal opinion.
    """
    x = _check_vector(g, x)
    z_k = _check_vector(g, z_k)
    if g.m == 0:
        return x.copy()
    return (x + g.adjacency().dot(z_k)) / (1.0 + g.out_degree)


def fj_iterate(g: WeightedDigraph, x, tol: float = 1e-10, max_iter: int = 10**6) -> IterationResult:
    """Iterate the update from z = x until the max-norm change drops below ``tol``.

    The iteration matrix has spectral radius < 1 (I + L is strictly row
    diagonally dominant), so this converges for every graph; exhausting
    ``max_iter`` raises NonConvergenceError and indicates a bug.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = _check_vector(g, x)
    z = x.copy()
    for k in range(1, max_iter + 1):
        z_next = fj_step(g, x, z)
        delta = np.max(np.abs(z_next - z)) if g.n else 0.0
        z = z_next
        if delta < tol:
            return IterationResult(z=z, iterations=k)
    raise NonConvergenceError(f"no convergence to {tol} within {max_iter} iterations")


def _solve_system(g: WeightedDigraph, x: np.ndarray) -> np.ndarray:
    if g.n <= _SPARSE_SOLVE_CUTOVER:
        a = np.eye(g.n) + np.diag(g.out_degree) - g.to_dense()
        try:
            return np.linalg.solve(a, x)
        except np.linalg.LinAlgError as exc:  # unreachable: I+L is strictly dominant
            raise RuntimeError(f"direct solve reported singularity: {exc}") from exc
    a = (sp.eye(g.n) + g.laplacian()).tocsc()
    return spla.spsolve(a, x)


def exact_equilibrium(
    g: WeightedDigraph, x, dense_limit: int = DENSE_LIMIT_DEFAULT
) -> EquilibriumReport:
    """Solve (I + L) z = x directly and report overall opinion and polarization."""
    x = _check_vector(g, x)
    if g.n > dense_limit:
        raise GraphTooLargeError(
            f"n={g.n} exceeds the direct-solve limit {dense_limit}; use the sampler"
        )
    z = _solve_system(g, x) if g.n else np.zeros(0)
    return EquilibriumReport(z=z, overall=overall_opinion(z), polarization=polarization(z) if g.n else 0.0)


def fundamental_matrix(g: WeightedDigraph, dense_limit: int = DENSE_LIMIT_DEFAULT) -> FundamentalMatrix:
    """Dense inverse of I + L, validated to be nonnegative and row stochastic."""
    if g.n > dense_limit:
        raise GraphTooLargeError(
            f"n={g.n} exceeds the direct-solve limit {dense_limit}; use the sampler"
        )
    a = np.eye(g.n) + np.diag(g.out_degree) - g.to_dense()
    try:
        omega = np.linalg.inv(a)
    except np.linalg.LinAlgError as exc:  # unreachable, as in exact_equilibrium
        raise RuntimeError(f"inversion reported singularity: {exc}") from exc
    return FundamentalMatrix(omega=omega)


def overall_opinion(z) -> float:
    """Sum of expressed opinions over all nodes."""
    return float(np.sum(z))


def polarization(z) -> float:
    """Squared norm of the mean-centered expressed-opinion vector."""
    z = np.asarray(z, dtype=np.float64)
    if z.size == 0:
        raise ValueError("polarization of an empty opinion vector is undefined")
    centered = z - z.mean()
    return float(centered @ centered)
