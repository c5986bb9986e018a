"""Progressive cluster growing.

Two algorithms produce a total clustering (every node assigned to a
center, with an original-scale distance bound d_orig >= dist(center, u)):

- :func:`cluster`: stages of sample -> grow-until-half-covered (doubling
  delta as needed) -> contract, while the uncovered count stays above
  8*tau*log2(n); leftovers become singletons.  The final delta is exposed
  as ``delta_end``.
- :func:`cluster2`: probes :func:`cluster` for its radius R, then runs
  ceil(log2 n) phases at the fixed radius 2R with doubling sampling
  probabilities 2^i/n; contraction rescales frontier edges by the growth
  already spent (d_u + w - 2R), so cluster radii stay O(R) instead of
  accumulating per stage.

Contractions remove covered non-centers, drop intra-covered edges, and
reattach frontier edges to their covered endpoint's center, composing the
edge offset so offset + w remains an original-scale length bound.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .engine import NodeStates, RunMetrics, StepBudget, WorkingGraph, run_growth_phase
from .errors import ConsistencyError, ValidationError
from .graph import Graph
from .rng import Rng

__all__ = [
    "SAMPLING_GAMMA",
    "ClusteringResult",
    "cluster",
    "cluster2",
    "contract",
    "contract2",
    "log_factor",
    "resolve_delta_init",
]

# new-center sampling rate per stage is SAMPLING_GAMMA * tau * log2(n)
# expected draws among the uncovered nodes
SAMPLING_GAMMA = 4.0 * math.log(2.0)

_S_SAMPLE = 0x5331
_S_SAMPLE2 = 0x5332
_S_PROBE = 0x5052


def log_factor(n: int) -> int:
    """ceil(log2 n), floored at 1 so n=1 never zeroes out thresholds."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def resolve_delta_init(g: Graph, policy: str | float) -> float:
    """Map a delta-init policy ('min' | 'mean' | explicit value) to a value."""
    if isinstance(policy, str):
        if policy == "min":
            return g.min_weight
        if policy == "mean":
            return g.mean_weight
        try:
            value = float(policy)
        except ValueError:
            raise ValidationError(f"unknown delta-init policy {policy!r}") from None
    else:
        value = float(policy)
    if not (value > 0) or not math.isfinite(value):
        raise ValidationError("delta-init value must be finite and > 0")
    return value


@dataclass
class ClusteringResult:
    """Total clustering of a graph.

    center_of[u] is u's center id; d_orig[u] >= dist_G(center_of[u], u)
    (zero for centers).  radius = max d_orig.  delta_end is the final
    growth delta (cluster only); probe_radius the probe's radius
    (cluster2 only).
    """

    algorithm: str
    tau: int
    center_of: np.ndarray
    d_orig: np.ndarray
    centers: np.ndarray
    radius: float
    stages: int
    metrics: RunMetrics
    delta_end: float | None = None
    probe_radius: float | None = None

    @property
    def cluster_count(self) -> int:
        return int(self.centers.size)


def _dedup_contracted(
    lo: np.ndarray, hi: np.ndarray, w: np.ndarray, off: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Collapse parallel working edges to the one minimizing offset + w
    (ties: smaller w, then smaller offset)."""
    if lo.size == 0:
        return lo, hi, w, off
    order = np.lexsort((off, w, off + w, hi, lo))
    lo, hi, w, off = lo[order], hi[order], w[order], off[order]
    first = np.ones(lo.size, dtype=bool)
    first[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
    return lo[first], hi[first], w[first], off[first]


def _contract_common(
    wg: WorkingGraph,
    states: NodeStates,
    is_center: np.ndarray,
    eu: np.ndarray,
    ev: np.ndarray,
    w: np.ndarray,
    off: np.ndarray,
    rescale_two_r: float | None,
    quiescent: bool,
) -> WorkingGraph:
    covered = np.isfinite(states.d)
    cu = covered[eu]
    cv = covered[ev]

    keep = ~cu & ~cv
    frontier = cu ^ cv

    fu, fv = eu[frontier], ev[frontier]
    f_cov_u = cu[frontier]
    a = np.where(f_cov_u, fu, fv)  # covered endpoint
    b = np.where(f_cov_u, fv, fu)  # uncovered endpoint
    new_u = states.center[a]
    fw = w[frontier]
    foff = off[frontier]
    if rescale_two_r is None:
        nw = fw
        noff = states.d_orig[a] + foff
    else:
        nw = states.d[a] + fw - rescale_two_r
        if nw.size and np.min(nw) <= 0.0:
            if quiescent:
                raise ConsistencyError(
                    "contract2 produced a non-positive rescaled weight under "
                    "quiescence; growth phase invariant violated"
                )
            # budget-stopped phase: growth was cut short, so the quiescence
            # argument does not apply; clamp to a tiny positive weight and
            # let the offset absorb the difference (bound stays exact)
            floor = rescale_two_r * 2.0**-52 if rescale_two_r > 0 else np.nextafter(0.0, 1.0)
            nw = np.maximum(nw, floor)
        noff = states.d_orig[a] + foff + (fw - nw)

    lo = np.concatenate([np.minimum(new_u, b), eu[keep]])
    hi = np.concatenate([np.maximum(new_u, b), ev[keep]])
    ww = np.concatenate([nw, w[keep]])
    oo = np.concatenate([noff, off[keep]])
    lo, hi, ww, oo = _dedup_contracted(lo, hi, ww, oo)

    removed = covered & ~is_center & wg.active
    new_active = wg.active & ~removed
    return WorkingGraph(wg.n, new_active, lo, hi, ww, oo)


def contract(wg: WorkingGraph, states: NodeStates, is_center: np.ndarray) -> WorkingGraph:
    """Remove covered non-centers; reattach frontier edges to centers.

    A frontier edge (covered a, uncovered b) becomes (center(a), b) with
    unchanged weight and offset increased by d_orig(a); edges between two
    covered nodes disappear; edges between uncovered nodes are untouched.
    """
    return _contract_common(
        wg, states, is_center, wg.eu, wg.ev, wg.w, wg.off, None, True
    )


def contract2(
    wg: WorkingGraph,
    states: NodeStates,
    is_center: np.ndarray,
    two_r: float,
    quiescent: bool = True,
) -> WorkingGraph:
    """Contraction with frontier rescaling at growth radius ``two_r``.

    Working edges heavier than two_r are unusable at this radius and are
    dropped outright.  A frontier edge's working weight becomes
    d(a) + w - two_r (strictly positive when the phase reached quiescence,
    asserted); its offset grows by d_orig(a) + (w - new_w), keeping
    offset + w the original-scale bound.
    """
    light = wg.w <= two_r
    return _contract_common(
        wg,
        states,
        is_center,
        wg.eu[light],
        wg.ev[light],
        wg.w[light],
        wg.off[light],
        two_r,
        quiescent,
    )


def _sample_centers(
    rng: Rng, stream: int, stage: int, candidates: np.ndarray, p: float, allow_empty: bool
) -> np.ndarray:
    """Independent keyed coins over candidate nodes; resamples with a fresh
    substream if an empty draw would leave the stage with no centers."""
    attempt = 0
    while True:
        picked = candidates[rng.derive(stream, stage, attempt).coins(candidates, p)]
        if picked.size or allow_empty:
            return picked
        attempt += 1


def _budget_for(budget_on: bool, max_steps: int) -> StepBudget | None:
    return StepBudget(max_steps) if budget_on else None


def cluster(
    g: Graph,
    tau: int,
    rng: Rng | int,
    delta_init: str | float = "mean",
    budget: bool = False,
) -> ClusteringResult:
    """Grow clusters stage by stage until few uncovered nodes remain.

    Parameters
    ----------
    g : graph to cluster (need not be connected, but stages make halving
        progress only within reach of sampled centers)
    tau : cluster-count parameter, 1 <= tau <= n
    rng : seed or Rng stream governing center sampling
    delta_init : 'min' | 'mean' | explicit positive value for the first
        growth radius; it doubles whenever a stage cannot cover half of
        the uncovered nodes and never resets
    budget : when True, each growth phase is capped at ceil(n / tau) steps
    """
    rng = Rng(rng) if isinstance(rng, int) else rng
    _validate_cluster_args(g, tau)
    t0 = time.perf_counter()
    n = g.n
    metrics = RunMetrics()

    assign_center = np.full(n, -1, dtype=np.int64)
    assign_d = np.full(n, np.inf, dtype=np.float64)

    if g.m == 0:
        # no edges: growth can never cover anything, every node is its own
        # singleton cluster
        all_ids = np.arange(n, dtype=np.int64)
        metrics.wall_time = time.perf_counter() - t0
        return ClusteringResult(
            "cluster", tau, all_ids, np.zeros(n), all_ids, 0.0, 0, metrics, delta_end=0.0
        )

    L = log_factor(n)
    threshold = 8 * tau * L
    delta = resolve_delta_init(g, delta_init)
    phase_budget = _budget_for(budget, math.ceil(n / tau))

    wg = WorkingGraph.from_graph(g)
    is_center = np.zeros(n, dtype=bool)
    stage = 0

    while True:
        uncovered_ids = np.flatnonzero(wg.active & ~is_center)
        if uncovered_ids.size < threshold:
            break
        stage += 1
        p = min(1.0, SAMPLING_GAMMA * tau * L / uncovered_ids.size)
        new_centers = _sample_centers(
            rng, _S_SAMPLE, stage, uncovered_ids, p, allow_empty=bool(is_center.any())
        )
        metrics.rounds += 1  # sampling + state re-initialization barrier
        X = is_center.copy()
        X[new_centers] = True

        states = NodeStates.fresh(n)
        states.activate_centers(np.flatnonzero(X & wg.active))

        saturated = False
        while True:
            phase = run_growth_phase(
                wg,
                states,
                delta,
                stop="until-half-covered-or-quiescent",
                budget=phase_budget,
                metrics=metrics,
            )
            newly = int(np.count_nonzero(np.isfinite(states.d) & wg.active & ~is_center))
            if 2 * newly >= uncovered_ids.size:
                break
            if phase.stop_reason == "quiescent" and delta >= wg.total_edge_weight:
                # nothing else is reachable from this stage's centers at any
                # delta (only possible on disconnected working graphs)
                saturated = True
                break
            delta *= 2.0

        covered = np.isfinite(states.d) & wg.active
        newly_covered = covered & ~is_center
        if not saturated and 2 * int(np.count_nonzero(newly_covered)) < uncovered_ids.size:
            raise ConsistencyError("stage ended without halving progress")
        assign_center[newly_covered] = states.center[newly_covered]
        assign_d[newly_covered] = states.d_orig[newly_covered]

        wg = contract(wg, states, X)
        metrics.rounds += 1  # contraction barrier
        is_center = X

    tail = np.flatnonzero(wg.active & ~is_center)
    assign_center[tail] = tail
    assign_d[tail] = 0.0
    is_center = is_center.copy()
    is_center[tail] = True

    if np.any(assign_center < 0):
        raise ConsistencyError("clustering left nodes unassigned")
    radius = float(assign_d.max(initial=0.0))
    if stage > 0 and radius > stage * 2.0 * delta:
        raise ConsistencyError("radius bookkeeping exceeded stages * 2 * delta_end")

    metrics.wall_time = time.perf_counter() - t0
    centers = np.unique(assign_center)
    return ClusteringResult(
        "cluster",
        tau,
        assign_center,
        assign_d,
        centers,
        radius,
        stage,
        metrics,
        delta_end=delta,
    )


def cluster2(
    g: Graph,
    tau: int,
    rng: Rng | int,
    delta_init: str | float = "mean",
    budget: bool = False,
) -> ClusteringResult:
    """Fixed-radius variant: probe :func:`cluster` for a radius estimate R,
    then grow every phase at 2R with sampling probability 2^i/n.

    The probe uses an independent substream of ``rng``; its cost is folded
    into the reported metrics.  With budget=True each phase is capped at
    ceil((n / tau) * log2 n) steps.
    """
    rng = Rng(rng) if isinstance(rng, int) else rng
    _validate_cluster_args(g, tau)
    t0 = time.perf_counter()
    n = g.n

    probe = cluster(g, tau, rng.derive(_S_PROBE), delta_init=delta_init, budget=budget)
    metrics = RunMetrics()
    metrics.merge(probe.metrics)
    two_r = 2.0 * probe.radius

    assign_center = np.full(n, -1, dtype=np.int64)
    assign_d = np.full(n, np.inf, dtype=np.float64)
    L = log_factor(n)
    phase_budget = _budget_for(budget, math.ceil(n / tau) * L)

    wg = WorkingGraph.from_graph(g)
    is_center = np.zeros(n, dtype=bool)
    phases_run = 0

    for i in range(1, L + 1):
        uncovered_ids = np.flatnonzero(wg.active & ~is_center)
        if uncovered_ids.size == 0:
            break
        phases_run += 1
        p = min(1.0, float(2**i) / n)
        new_centers = _sample_centers(
            rng, _S_SAMPLE2, i, uncovered_ids, p, allow_empty=bool(is_center.any())
        )
        metrics.rounds += 1  # sampling + state re-initialization barrier
        X = is_center.copy()
        X[new_centers] = True

        states = NodeStates.fresh(n)
        states.activate_centers(np.flatnonzero(X & wg.active))

        if two_r > 0:
            phase = run_growth_phase(
                wg, states, two_r, stop="until-quiescent",
                budget=phase_budget, metrics=metrics,
            )
            quiescent = phase.stop_reason == "quiescent"
        else:
            quiescent = True  # zero radius: no edge is usable, nothing to grow

        covered = np.isfinite(states.d) & wg.active
        newly_covered = covered & ~is_center
        assign_center[newly_covered] = states.center[newly_covered]
        assign_d[newly_covered] = states.d_orig[newly_covered]

        wg = contract2(wg, states, X, two_r, quiescent=quiescent)
        metrics.rounds += 1  # contraction barrier
        is_center = X

    if np.any(assign_center < 0):
        raise ConsistencyError("cluster2 left nodes unassigned (final phase must cover all)")
    radius = float(assign_d.max(initial=0.0))

    metrics.wall_time = time.perf_counter() - t0
    centers = np.unique(assign_center)
    return ClusteringResult(
        "cluster2",
        tau,
        assign_center,
        assign_d,
        centers,
        radius,
        phases_run,
        metrics,
        probe_radius=probe.radius,
    )


def _validate_cluster_args(g: Graph, tau: int) -> None:
    if g.n < 1:
        raise ValidationError("graph must be non-empty")
    if not (1 <= tau <= g.n):
        raise ValidationError(f"tau must satisfy 1 <= tau <= n (got {tau}, n={g.n})")
