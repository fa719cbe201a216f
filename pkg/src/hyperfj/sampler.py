"""Linear-time estimation of equilibrium opinions by sampling converging forests.

Every sample grows one spanning converging forest with loop-erased random
walks: from each unfinished node the walk either gets absorbed (probability
1/(1+d_u), making u a root) or moves along an out-arc chosen proportionally to
its weight, overwriting the successor pointer so that loops erase themselves;
a retrace pass then freezes the walked path and labels it with the root it
reached. A forest is returned with probability proportional to its weight, so
averaging x[root_of(i)] over samples is an unbiased estimate of node i's
equilibrium expressed opinion. Expected cost is O(tau * (n + m)).

Randomness is counter-based: sample k uses its own SplitMix64 stream derived
from (seed, k), which makes runs reproducible and samples independent of
execution order. ``worker_count`` fixes how samples are chunked for
accumulation (and lets chunks run on separate threads); reports are
bit-identical for identical (seed, worker_count, tau).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from .digraph import WeightedDigraph
from .dynamics import polarization, overall_opinion
from .enumeration import InForest

__all__ = [
    "TAU_DEFAULT",
    "SamplerConfig",
    "EstimateReport",
    "sample_forest",
    "estimate",
    "estimator_stderr",
    "root_frequencies",
]

TAU_DEFAULT = 1000

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


@dataclass(frozen=True)
class SamplerConfig:
    tau: int = TAU_DEFAULT
    seed: int = 0
    worker_count: int = 1

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")


@dataclass(frozen=True, eq=False)
class EstimateReport:
    z_hat: np.ndarray
    overall_hat: float
    polarization_hat: float
    tau: int
    seed: int


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _stream_state(seed, sample_idx):
    return _mix64(seed + (np.uint64(sample_idx) + np.uint64(1)) * _GOLDEN)


@njit(cache=True)
def _next_double(state):
    state = state + _GOLDEN
    z = _mix64(state)
    return state, (z >> np.uint64(11)) * _INV53


@njit(cache=True)
def _one_sample(indptr, targets, cumw, deg, seed, sample_idx, nextnode, root, inforest):
    """Grow one forest in-place into (nextnode, root); resets all walk state first."""
    n = deg.shape[0]
    for i in range(n):
        inforest[i] = False
        nextnode[i] = -1
        root[i] = 0
    state = _stream_state(seed, sample_idx)
    for i in range(n):
        u = i
        while not inforest[u]:
            state, r = _next_double(state)
            if r <= 1.0 / (1.0 + deg[u]):
                inforest[u] = True
                nextnode[u] = -1
                root[u] = u
            else:
                state, r2 = _next_double(state)
                t = r2 * deg[u]
                lo = indptr[u]
                hi = indptr[u + 1]
                while lo < hi:  # first arc position with running weight > t
                    mid = (lo + hi) // 2
                    if cumw[mid] > t:
                        hi = mid
                    else:
                        lo = mid + 1
                if lo == indptr[u + 1]:  # guard the last-ulp rounding edge
                    lo -= 1
                v = targets[lo]
                nextnode[u] = v
                u = v
        rootnow = root[u]
        u = i
        while not inforest[u]:
            inforest[u] = True
            root[u] = rootnow
            u = nextnode[u]


@njit(cache=True, parallel=True)
def _estimate_kernel(indptr, targets, cumw, deg, x, seed, tau, n_chunks):
    n = deg.shape[0]
    sums = np.zeros((n_chunks, n))
    sumsqs = np.zeros((n_chunks, n))
    # per-node extremes of the sampled root opinions: when they coincide the
    # mean is that value exactly, with no accumulation rounding
    minv = np.full((n_chunks, n), np.inf)
    maxv = np.full((n_chunks, n), -np.inf)
    for c in prange(n_chunks):
        nextnode = np.empty(n, np.int64)
        root = np.empty(n, np.int64)
        inforest = np.empty(n, np.bool_)
        lo = c * tau // n_chunks
        hi = (c + 1) * tau // n_chunks
        for s_idx in range(lo, hi):
            _one_sample(indptr, targets, cumw, deg, seed, s_idx, nextnode, root, inforest)
            for i in range(n):
                v = x[root[i]]
                sums[c, i] += v
                sumsqs[c, i] += v * v
                if v < minv[c, i]:
                    minv[c, i] = v
                if v > maxv[c, i]:
                    maxv[c, i] = v
    total = np.zeros(n)
    totalsq = np.zeros(n)
    tmin = np.full(n, np.inf)
    tmax = np.full(n, -np.inf)
    for c in range(n_chunks):  # merge in chunk order for reproducibility
        for i in range(n):
            total[i] += sums[c, i]
            totalsq[i] += sumsqs[c, i]
            if minv[c, i] < tmin[i]:
                tmin[i] = minv[c, i]
            if maxv[c, i] > tmax[i]:
                tmax[i] = maxv[c, i]
    return total, totalsq, tmin, tmax


@njit(cache=True)
def _root_count_kernel(indptr, targets, cumw, deg, seed, tau):
    n = deg.shape[0]
    counts = np.zeros((n, n), np.int64)
    nextnode = np.empty(n, np.int64)
    root = np.empty(n, np.int64)
    inforest = np.empty(n, np.bool_)
    for s_idx in range(tau):
        _one_sample(indptr, targets, cumw, deg, seed, s_idx, nextnode, root, inforest)
        for i in range(n):
            counts[i, root[i]] += 1
    return counts


def _seed_u64(seed: int) -> np.uint64:
    return np.uint64(seed & 0xFFFFFFFFFFFFFFFF)


def sample_forest(g: WeightedDigraph, seed: int, sample_index: int = 0) -> InForest:
    """Draw one spanning converging forest from the stream (seed, sample_index)."""
    nextnode = np.empty(g.n, np.int64)
    root = np.empty(g.n, np.int64)
    inforest = np.empty(g.n, np.bool_)
    _one_sample(
        g.indptr, g.targets, g.cumweights, g.out_degree,
        _seed_u64(seed), sample_index, nextnode, root, inforest,
    )
    return InForest(successor=nextnode, root_of=root)


def _run_kernel(g: WeightedDigraph, x: np.ndarray, cfg: SamplerConfig):
    return _estimate_kernel(
        g.indptr, g.targets, g.cumweights, g.out_degree, x,
        _seed_u64(cfg.seed), cfg.tau, cfg.worker_count,
    )


def _check_opinions(g: WeightedDigraph, x) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"opinion vector has shape {x.shape}, expected ({g.n},)")
    if x.size and not np.all(np.isfinite(x)):
        raise ValueError("opinion vector has non-finite entries")
    return x


def estimate(g: WeightedDigraph, x, cfg: SamplerConfig = SamplerConfig()) -> EstimateReport:
    """Estimate equilibrium opinions, their sum, and polarization from cfg.tau forests.

    Polarization is computed by plugging the estimated opinions into the
    mean-centered squared norm, exactly as the exact path does; sampling noise
    gives it an O(1/tau) upward bias, so judge it together with
    ``estimator_stderr`` and tau.
    """
    x = _check_opinions(g, x)
    sums, _, tmin, tmax = _run_kernel(g, x, cfg)
    z_hat = sums / cfg.tau
    degenerate = tmin == tmax
    z_hat[degenerate] = tmin[degenerate]
    return EstimateReport(
        z_hat=z_hat,
        overall_hat=overall_opinion(z_hat),
        polarization_hat=polarization(z_hat) if g.n else 0.0,
        tau=cfg.tau,
        seed=cfg.seed,
    )


def estimator_stderr(g: WeightedDigraph, x, cfg: SamplerConfig) -> np.ndarray:
    """Per-node standard error of the estimate: sample std of x[root] over sqrt(tau)."""
    if cfg.tau < 2:
        raise ValueError("stderr needs tau >= 2")
    x = _check_opinions(g, x)
    sums, sumsqs, tmin, tmax = _run_kernel(g, x, cfg)
    var = (sumsqs - sums * sums / cfg.tau) / (cfg.tau - 1)
    var[tmin == tmax] = 0.0
    return np.sqrt(np.clip(var, 0.0, None) / cfg.tau)


def root_frequencies(g: WeightedDigraph, cfg: SamplerConfig) -> np.ndarray:
    """Empirical (n, n) matrix of P(node i drains to root j); rows sum to 1."""
    counts = _root_count_kernel(
        g.indptr, g.targets, g.cumweights, g.out_degree, _seed_u64(cfg.seed), cfg.tau
    )
    return counts / cfg.tau
