"""Delta-stepping SSSP baseline and the diameter bounds built on it.

The implementation follows the classic bucket formulation: bucket i holds
nodes with tentative distance in [i*delta, (i+1)*delta).  Processing a
bucket alternates light-edge (w <= delta) relaxation sweeps — nodes whose
distance improves back into the current bucket are reinserted and swept
again — and finishes with one heavy-edge (w > delta) relaxation over
everything the bucket settled.  Distances are exact for positive weights.

Accounting: every light sweep is one round; a heavy relaxation counts as a
round only when it actually sends requests.  Each relaxation request is a
message; each adopted request is a node update.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csgraph as _csgraph

from .engine import RunMetrics
from .errors import ValidationError
from .graph import Graph, connected_components

__all__ = [
    "SsspResult",
    "TuneResult",
    "delta_stepping",
    "sssp_diameter_upper",
    "iterated_sssp_lower",
    "tune_delta",
    "resolve_delta",
]


@dataclass
class SsspResult:
    """Exact SSSP distances plus the run's cost accounting."""

    source: int
    delta: float
    dist: np.ndarray
    metrics: RunMetrics

    @property
    def max_finite_dist(self) -> float:
        finite = self.dist[np.isfinite(self.dist)]
        return float(finite.max()) if finite.size else 0.0


@dataclass
class TuneResult:
    """Outcome of a delta grid search (winner = fewest rounds, ties to the
    smaller delta)."""

    best: SsspResult
    trials: list[tuple[float, int, int]] = field(default_factory=list)  # (delta, rounds, work)

    @property
    def best_delta(self) -> float:
        return self.best.delta


def resolve_delta(g: Graph, policy: str | float) -> float:
    """'min' | 'mean' | numeric string | number -> bucket width."""
    if isinstance(policy, str):
        if policy == "min":
            return g.min_weight
        if policy == "mean":
            return g.mean_weight
        try:
            policy = float(policy)
        except ValueError:
            raise ValidationError(f"unknown delta policy {policy!r}") from None
    value = float(policy)
    if not (value > 0) or not math.isfinite(value):
        raise ValidationError("delta must be finite and > 0")
    return value


def _batch_min(tgt: np.ndarray, val: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-target minimum of proposed values (deterministic)."""
    order = np.lexsort((val, tgt))
    tgt, val = tgt[order], val[order]
    first = np.ones(tgt.size, dtype=bool)
    first[1:] = tgt[1:] != tgt[:-1]
    return tgt[first], val[first]


def delta_stepping(g: Graph, source: int, delta: float) -> SsspResult:
    """Exact single-source shortest paths with bucket width ``delta``."""
    if not (0 <= source < g.n):
        raise ValidationError(f"source {source} out of range")
    if not (delta > 0) or not math.isfinite(delta):
        raise ValidationError("delta must be finite and > 0")
    t0 = time.perf_counter()
    metrics = RunMetrics()
    indptr, indices, weights = g.indptr, g.indices, g.weights
    light = weights <= delta

    dist = np.full(g.n, np.inf, dtype=np.float64)
    dist[source] = 0.0
    buckets: dict[int, list[int]] = {0: [source]}

    def push(nodes: np.ndarray) -> None:
        idxs = (dist[nodes] / delta).astype(np.int64)
        for node, b in zip(nodes.tolist(), idxs.tolist()):
            buckets.setdefault(b, []).append(node)

    def relax(src_nodes: np.ndarray, edge_mask: np.ndarray) -> np.ndarray:
        """Send dist[u] + w along selected incident edges; apply batch min.
        Returns the improved nodes."""
        counts = indptr[src_nodes + 1] - indptr[src_nodes]
        total = int(counts.sum())
        if total == 0:
            return np.empty(0, dtype=np.int64)
        starts = indptr[src_nodes]
        offs = np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
        pos = np.arange(total, dtype=np.int64) + offs
        sel = edge_mask[pos]
        pos = pos[sel]
        src = np.repeat(src_nodes, counts)[sel]
        metrics.messages += pos.size
        if pos.size == 0:
            return np.empty(0, dtype=np.int64)
        tgt, val = _batch_min(indices[pos], dist[src] + weights[pos])
        wins = val < dist[tgt]
        tgt, val = tgt[wins], val[wins]
        dist[tgt] = val
        metrics.node_updates += tgt.size
        return tgt

    while buckets:
        i = min(buckets)
        settled: set[int] = set()
        while True:
            pending = buckets.pop(i, [])
            if not pending:
                break
            live = np.unique(np.array(pending, dtype=np.int64))
            live = live[(dist[live] / delta).astype(np.int64) == i]
            if live.size == 0:
                break
            metrics.rounds += 1  # one light relaxation sweep
            settled.update(live.tolist())
            improved = relax(live, light)
            if improved.size:
                push(improved)
        if settled:
            heavy_sources = np.array(sorted(settled), dtype=np.int64)
            before = metrics.messages
            improved = relax(heavy_sources, ~light)
            if metrics.messages > before:
                metrics.rounds += 1  # heavy phase actually communicated
            if improved.size:
                push(improved)

    metrics.wall_time = time.perf_counter() - t0
    return SsspResult(source=source, delta=delta, dist=dist, metrics=metrics)


@dataclass
class UpperBoundResult:
    """2 * eccentricity upper bound, maxed over components."""

    value: float
    metrics: RunMetrics


def sssp_diameter_upper(g: Graph, source: int, delta: float) -> UpperBoundResult:
    """Upper-bound the diameter by 2 * max dist from one source per
    component (``source`` for its own component, the smallest node id for
    every other)."""
    labels = connected_components(g)
    sources = np.unique(labels).tolist()
    own = int(labels[source])
    sources[sources.index(own)] = source
    metrics = RunMetrics()
    value = 0.0
    for s in sources:
        run = delta_stepping(g, int(s), delta)
        metrics.merge(run.metrics)
        value = max(value, 2.0 * run.max_finite_dist)
    return UpperBoundResult(value=value, metrics=metrics)


def iterated_sssp_lower(g: Graph, start: int, iterations: int = 3) -> float:
    """Lower-bound the diameter by hopping to the farthest node seen.

    Runs an exact SSSP from ``start``, jumps to the farthest reachable
    node (smallest id on ties), repeats.  The best eccentricity seen is a
    valid lower bound on the diameter of any graph.
    """
    if not (0 <= start < g.n):
        raise ValidationError(f"start {start} out of range")
    if iterations < 1:
        raise ValidationError("iterations must be >= 1")
    mat = g.to_csr_matrix()
    cur = int(start)
    best = 0.0
    for _ in range(iterations):
        dist = _csgraph.dijkstra(mat, directed=False, indices=cur)
        finite = np.isfinite(dist)
        ecc = float(dist[finite].max()) if finite.any() else 0.0
        best = max(best, ecc)
        if ecc == 0.0:
            break
        nxt = int(np.flatnonzero(finite & (dist == ecc)).min())
        if nxt == cur:
            break
        cur = nxt
    return best


def tune_delta(g: Graph, source: int, candidates: list[float]) -> TuneResult:
    """Run delta-stepping for every candidate; keep the fewest-rounds run.

    Candidates are tried in ascending order so a tie keeps the smaller
    delta.
    """
    if not candidates:
        raise ValidationError("need at least one delta candidate")
    best: SsspResult | None = None
    trials: list[tuple[float, int, int]] = []
    for d in sorted(float(c) for c in candidates):
        run = delta_stepping(g, source, d)
        trials.append((d, run.metrics.rounds, run.metrics.work))
        if best is None or run.metrics.rounds < best.metrics.rounds:
            best = run
    return TuneResult(best=best, trials=trials)
