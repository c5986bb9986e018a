"""Immutable undirected weighted graph in CSR form, plus weight models.

Graphs are simple (no self-loops, parallel edges collapsed to minimum
weight), node ids are dense 0..n-1, and all weights are strictly positive
float64.  Connectivity is *not* an invariant — the diameter of a
disconnected graph is the maximum over its components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph as _csgraph

from .errors import ValidationError
from .rng import Rng

__all__ = [
    "Graph",
    "WeightModel",
    "assign_weights",
    "connected_components",
]


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph.

    ``edge_u/edge_v/edge_w`` hold each undirected edge once (u < v);
    ``indptr/indices/weights`` are the symmetric CSR adjacency built from
    them.  Arrays are read-only after construction.
    """

    n: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_w: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    meta: Mapping[str, object] = field(default_factory=dict)

    @property
    def m(self) -> int:
        """Number of undirected edges."""
        return int(self.edge_u.shape[0])

    @property
    def min_weight(self) -> float:
        if self.m == 0:
            raise ValidationError("graph has no edges")
        return float(self.edge_w.min())

    @property
    def mean_weight(self) -> float:
        if self.m == 0:
            raise ValidationError("graph has no edges")
        return float(self.edge_w.mean())

    @property
    def total_weight(self) -> float:
        return float(self.edge_w.sum())

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        """(neighbor ids, edge weights) for node u."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def to_csr_matrix(self) -> csr_matrix:
        return csr_matrix(
            (self.weights, self.indices, self.indptr), shape=(self.n, self.n)
        )

    def with_weights(self, edge_w: np.ndarray, meta: Mapping[str, object] | None = None) -> "Graph":
        """Same topology, new per-edge weights (aligned with edge_u/edge_v)."""
        return build_graph(
            self.n, self.edge_u, self.edge_v, np.asarray(edge_w, dtype=np.float64),
            meta=dict(self.meta if meta is None else meta),
        )

    def descriptor(self) -> str:
        name = self.meta.get("name", "graph")
        return f"{name}[n={self.n},m={self.m}]"


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def build_graph(
    n: int,
    u: np.ndarray,
    v: np.ndarray,
    w: np.ndarray,
    meta: Mapping[str, object] | None = None,
) -> Graph:
    """Build a :class:`Graph` from (possibly messy) directed edge samples.

    Self-loops are dropped, duplicate/reverse pairs collapse to the minimum
    weight, and the CSR adjacency is sorted by (node, neighbor) so every
    downstream traversal is order-deterministic.
    """
    if n <= 0:
        raise ValidationError("graph must have at least one node")
    u = np.asarray(u, dtype=np.int64).ravel()
    v = np.asarray(v, dtype=np.int64).ravel()
    w = np.asarray(w, dtype=np.float64).ravel()
    if not (u.shape == v.shape == w.shape):
        raise ValidationError("edge arrays must have equal length")
    if u.size:
        if u.min() < 0 or v.min() < 0 or max(u.max(), v.max()) >= n:
            raise ValidationError("edge endpoint out of range")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise ValidationError("edge weights must be finite and > 0")

    keep = u != v
    u, v, w = u[keep], v[keep], w[keep]
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    # collapse parallel edges to min weight: sort by (lo, hi, w), keep first
    order = np.lexsort((w, hi, lo))
    lo, hi, w = lo[order], hi[order], w[order]
    if lo.size:
        first = np.ones(lo.size, dtype=bool)
        first[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
        lo, hi, w = lo[first], hi[first], w[first]

    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    ww = np.concatenate([w, w])
    order = np.lexsort((dst, src))
    src, dst, ww = src[order], dst[order], ww[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)

    return Graph(
        n=n,
        edge_u=_freeze(lo),
        edge_v=_freeze(hi),
        edge_w=_freeze(w),
        indptr=_freeze(indptr),
        indices=_freeze(dst),
        weights=_freeze(ww),
        meta=dict(meta or {}),
    )


@dataclass(frozen=True)
class WeightModel:
    """How to (re)weight a graph's edges.

    kind: 'as-given' leaves weights untouched; 'uniform' draws from (0, 1];
    'two-point' draws w_big with probability p, else w_small.  Draws are
    keyed by (min id, max id) of the edge, so the result is independent of
    edge order.
    """

    kind: str = "as-given"
    p: float = 0.5
    w_small: float = 1.0
    w_big: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("as-given", "uniform", "two-point"):
            raise ValidationError(f"unknown weight model {self.kind!r}")
        if self.kind == "two-point":
            if not (0.0 <= self.p <= 1.0):
                raise ValidationError("two-point p must lie in [0, 1]")
            if self.w_small <= 0 or self.w_big <= 0:
                raise ValidationError("two-point weights must be > 0")

    def describe(self) -> str:
        if self.kind == "two-point":
            return f"two-point(p={self.p},w_small={self.w_small},w_big={self.w_big})"
        return self.kind


def assign_weights(g: Graph, model: WeightModel, rng: Rng) -> Graph:
    """Apply a :class:`WeightModel` to ``g``; returns ``g`` for 'as-given'."""
    if model.kind == "as-given":
        return g
    u = rng.pair_u01(g.edge_u, g.edge_v)
    if model.kind == "uniform":
        w = 1.0 - u  # (0, 1]
    else:
        w = np.where(u < model.p, model.w_big, model.w_small)
    meta = dict(g.meta)
    meta["weights"] = model.describe()
    return g.with_weights(w, meta=meta)


def connected_components(g: Graph) -> np.ndarray:
    """Component label per node; the label is the minimum node id inside
    the component (deterministic regardless of traversal order)."""
    ncomp, raw = _csgraph.connected_components(g.to_csr_matrix(), directed=False)
    # min node id per raw component label, independent of scipy's labeling
    first = np.full(ncomp, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(first, raw, np.arange(g.n, dtype=np.int64))
    return first[raw]
