"""Independent brute-force references used to verify the fast paths.

Nothing here shares code with the engine, clustering, or baseline modules:
`dijkstra` is a plain binary-heap implementation, `exact_diameter` drives
scipy's C Dijkstra over every source, and the two radius oracles are
exhaustive.  All of them are deliberately simple and size-capped.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from math import inf

import numpy as np
from scipy.sparse import csgraph as _csgraph

from .errors import ValidationError
from .graph import Graph

__all__ = [
    "dijkstra",
    "exact_diameter",
    "optimal_cluster_radius",
    "hop_radius",
    "OracleReport",
]

EXACT_DIAMETER_CAP = 5000
_RADIUS_N_CAP = 12
_RADIUS_TAU_CAP = 3
_HOP_RADIUS_CAP = 2000


@dataclass(frozen=True)
class OracleReport:
    """One verified quantity, for audit records."""

    quantity: str
    value: float
    method: str
    params: dict = field(default_factory=dict)


def dijkstra(g: Graph, source: int) -> np.ndarray:
    """Exact SSSP distances from ``source`` (binary heap, float64 sums).

    Unreachable nodes get +inf.  Accumulation is d[u] + w per relaxation,
    matching the engine's arithmetic exactly.
    """
    if not (0 <= source < g.n):
        raise ValidationError(f"source {source} out of range")
    dist = np.full(g.n, inf, dtype=np.float64)
    dist[source] = 0.0
    pq: list[tuple[float, int]] = [(0.0, source)]
    indptr, indices, weights = g.indptr, g.indices, g.weights
    while pq:
        d, u = heapq.heappop(pq)
        if d > dist[u]:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            v = int(indices[k])
            nd = d + weights[k]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(pq, (nd, int(v)))
    return dist


def _apsp_chunked(g: Graph, sources: np.ndarray, chunk: int = 512) -> np.ndarray:
    mat = g.to_csr_matrix()
    out = np.empty((sources.size, g.n), dtype=np.float64)
    for lo in range(0, sources.size, chunk):
        idx = sources[lo : lo + chunk]
        out[lo : lo + idx.size] = _csgraph.dijkstra(mat, directed=False, indices=idx)
    return out


def exact_diameter(g: Graph, cap: int = EXACT_DIAMETER_CAP) -> float:
    """True weighted diameter: max finite pairwise distance.

    Disconnected graphs take the max within each component (cross-component
    pairs are infinite and excluded).  Runs n single-source searches, so it
    refuses graphs above ``cap`` nodes.
    """
    if g.n > cap:
        raise ValidationError(f"exact_diameter limited to n <= {cap} (got {g.n})")
    if g.n == 1 or g.m == 0:
        return 0.0
    best = 0.0
    mat = g.to_csr_matrix()
    for lo in range(0, g.n, 512):
        idx = np.arange(lo, min(lo + 512, g.n))
        dmat = _csgraph.dijkstra(mat, directed=False, indices=idx)
        finite = dmat[np.isfinite(dmat)]
        if finite.size:
            best = max(best, float(finite.max()))
    return best


def optimal_cluster_radius(g: Graph, tau: int) -> float:
    """R_G(tau): the best achievable max distance-to-center over all
    center sets of size tau (nodes join their nearest center).

    Exhaustive over all C(n, tau) center subsets; capped at n <= 12,
    tau <= 3.  Returns +inf when tau centers cannot cover the graph
    (more components than centers).
    """
    if g.n > _RADIUS_N_CAP:
        raise ValidationError(f"optimal_cluster_radius limited to n <= {_RADIUS_N_CAP}")
    if not (1 <= tau <= _RADIUS_TAU_CAP):
        raise ValidationError(f"tau must be in 1..{_RADIUS_TAU_CAP}")
    if tau >= g.n:
        return 0.0
    dmat = _apsp_chunked(g, np.arange(g.n, dtype=np.int64))
    best = inf
    for centers in combinations(range(g.n), tau):
        radius = float(dmat[list(centers), :].min(axis=0).max())
        if radius < best:
            best = radius
    return best


def hop_radius(g: Graph, delta: float) -> int:
    """l_Delta: max over pairs with dist <= delta of the minimum hop count
    among minimum-weight paths (lexicographic (weight, hops) search).

    A pair counts only if its shortest-path weight is <= delta; with no
    such pair the result is 0 (every node reaches itself in 0 hops).
    """
    if g.n > _HOP_RADIUS_CAP:
        raise ValidationError(f"hop_radius limited to n <= {_HOP_RADIUS_CAP}")
    if delta < 0:
        raise ValidationError("delta must be >= 0")
    indptr, indices, weights = g.indptr, g.indices, g.weights
    worst = 0
    for src in range(g.n):
        dist = np.full(g.n, inf, dtype=np.float64)
        hops = np.full(g.n, np.iinfo(np.int64).max, dtype=np.int64)
        dist[src] = 0.0
        hops[src] = 0
        pq: list[tuple[float, int, int]] = [(0.0, 0, src)]
        while pq:
            d, h, u = heapq.heappop(pq)
            if (d, h) > (dist[u], hops[u]):
                continue
            for k in range(indptr[u], indptr[u + 1]):
                v = int(indices[k])
                nd = d + weights[k]
                nh = h + 1
                if nd < dist[v] or (nd == dist[v] and nh < hops[v]):
                    dist[v] = nd
                    hops[v] = nh
                    heapq.heappush(pq, (nd, nh, v))
        within = dist <= delta
        if np.any(within):
            worst = max(worst, int(hops[within].max()))
    return worst
