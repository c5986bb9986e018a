"""Bulk-synchronous cluster-growing engine.

A *working graph* is the (possibly contracted) graph a clustering stage
runs on; node ids stay in the original id space, inactive nodes simply
have no edges.  Each undirected working edge carries a working weight
``w`` (drives the growth control flow) and an ``offset`` such that
``offset + w`` upper-bounds the original-scale length of traversing the
underlying original edge between the two working endpoints.

One :func:`delta_growing_step` is one superstep with Jacobi (read old,
write new) semantics: every sender u with d_u < delta offers
(d_u + w, center) across each light edge (w <= delta) whenever
d_u + w <= delta; a node adopts the lexicographically smallest offer
(smallest tentative distance, then smallest center id) if it beats its
current distance strictly.  Nodes sitting exactly at d_u = delta never
propagate.

The sender set is the frontier — nodes updated in the previous step —
which yields states identical to all-senders Jacobi: a non-updated node's
offers were already sent and can no longer win strictly.  Messages are
counted as offers actually sent under this optimization.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .graph import Graph

__all__ = [
    "WorkingGraph",
    "NodeStates",
    "RunMetrics",
    "StepBudget",
    "StepOutcome",
    "PhaseResult",
    "delta_growing_step",
    "run_growth_phase",
]


@dataclass
class RunMetrics:
    """Cost model of one run.

    rounds = growing steps + one per sampling/contraction barrier;
    work = node_updates + messages.  wall_time is informational only and
    never asserted.
    """

    growing_steps: int = 0
    rounds: int = 0
    node_updates: int = 0
    messages: int = 0
    wall_time: float = 0.0

    @property
    def work(self) -> int:
        return self.node_updates + self.messages

    def merge(self, other: "RunMetrics") -> None:
        self.growing_steps += other.growing_steps
        self.rounds += other.rounds
        self.node_updates += other.node_updates
        self.messages += other.messages
        self.wall_time += other.wall_time

    def to_dict(self) -> dict:
        return {
            "growing_steps": self.growing_steps,
            "rounds": self.rounds,
            "node_updates": self.node_updates,
            "messages": self.messages,
            "work": self.work,
            "wall_time": self.wall_time,
        }


@dataclass(frozen=True)
class StepBudget:
    """Cap on growing steps per growth phase (off when max_steps is None)."""

    max_steps: int | None = None

    def __post_init__(self) -> None:
        if self.max_steps is not None and self.max_steps < 1:
            raise ValidationError("budget max_steps must be >= 1")


class WorkingGraph:
    """Mutable-by-replacement contracted view of a graph.

    Holds the surviving undirected edges (eu, ev, w, off) plus an active
    mask, and a CSR adjacency over half-edges for frontier expansion.
    """

    __slots__ = ("n", "active", "eu", "ev", "w", "off", "indptr", "adj_dst", "adj_w", "adj_off")

    def __init__(
        self,
        n: int,
        active: np.ndarray,
        eu: np.ndarray,
        ev: np.ndarray,
        w: np.ndarray,
        off: np.ndarray,
    ):
        self.n = n
        self.active = active
        self.eu = eu
        self.ev = ev
        self.w = w
        self.off = off
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        ww = np.concatenate([w, w])
        oo = np.concatenate([off, off])
        order = np.lexsort((dst, src))
        src, self.adj_dst, self.adj_w, self.adj_off = (
            src[order], dst[order], ww[order], oo[order],
        )
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.indptr, src + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)

    @classmethod
    def from_graph(cls, g: Graph) -> "WorkingGraph":
        return cls(
            g.n,
            np.ones(g.n, dtype=bool),
            g.edge_u.astype(np.int64),
            g.edge_v.astype(np.int64),
            g.edge_w.astype(np.float64),
            np.zeros(g.m, dtype=np.float64),
        )

    @property
    def active_count(self) -> int:
        return int(self.active.sum())

    @property
    def total_edge_weight(self) -> float:
        return float(self.w.sum())


@dataclass
class NodeStates:
    """Per-node growth state, arrays indexed by original node id.

    center: assigned center id (-1 while uncovered); d: control distance in
    the working graph (inf while uncovered); d_orig: original-scale upper
    bound on dist(center, node); epoch: growing step at which the node was
    covered (0 for initial centers).
    """

    center: np.ndarray
    d: np.ndarray
    d_orig: np.ndarray
    epoch: np.ndarray

    @classmethod
    def fresh(cls, n: int) -> "NodeStates":
        return cls(
            center=np.full(n, -1, dtype=np.int64),
            d=np.full(n, np.inf, dtype=np.float64),
            d_orig=np.full(n, np.inf, dtype=np.float64),
            epoch=np.full(n, -1, dtype=np.int64),
        )

    def activate_centers(self, centers: np.ndarray) -> None:
        self.center[centers] = centers
        self.d[centers] = 0.0
        self.d_orig[centers] = 0.0
        self.epoch[centers] = 0

    def covered(self) -> np.ndarray:
        return np.isfinite(self.d)


@dataclass(frozen=True)
class StepOutcome:
    changed: bool
    updated: np.ndarray  # node ids adopted this step (sorted)
    offers: int
    newly_covered: int


@dataclass(frozen=True)
class PhaseResult:
    stop_reason: str  # 'quiescent' | 'half-covered' | 'budget'
    steps: int


def delta_growing_step(
    wg: WorkingGraph,
    states: NodeStates,
    delta: float,
    frontier: np.ndarray,
    step_index: int,
) -> StepOutcome:
    """One BSP superstep; mutates ``states`` in place.

    ``frontier`` is the sender candidate set; senders are its members with
    d < delta.  Returns the adopted node set (the next frontier).
    """
    if delta <= 0:
        raise ValidationError("delta must be > 0")
    senders = frontier[states.d[frontier] < delta]
    if senders.size == 0:
        return StepOutcome(False, senders, 0, 0)

    counts = wg.indptr[senders + 1] - wg.indptr[senders]
    total = int(counts.sum())
    if total == 0:
        return StepOutcome(False, np.empty(0, dtype=np.int64), 0, 0)
    # gather half-edges of all senders
    starts = wg.indptr[senders]
    offsets = np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
    pos = np.arange(total, dtype=np.int64) + offsets
    src = np.repeat(senders, counts)

    w = wg.adj_w[pos]
    nd = states.d[src] + w
    ok = (w <= delta) & (nd <= delta)
    offers = int(np.count_nonzero(ok))
    if offers == 0:
        return StepOutcome(False, np.empty(0, dtype=np.int64), 0, 0)

    tgt = wg.adj_dst[pos[ok]]
    cand_d = nd[ok]
    cand_center = states.center[src[ok]]
    cand_orig = states.d_orig[src[ok]] + wg.adj_off[pos[ok]] + w[ok]

    # per-target lexicographic min offer: smallest d, then smallest center id
    order = np.lexsort((cand_center, cand_d, tgt))
    tgt, cand_d, cand_center, cand_orig = (
        tgt[order], cand_d[order], cand_center[order], cand_orig[order],
    )
    first = np.ones(tgt.size, dtype=bool)
    first[1:] = tgt[1:] != tgt[:-1]
    tgt, cand_d, cand_center, cand_orig = (
        tgt[first], cand_d[first], cand_center[first], cand_orig[first],
    )

    wins = cand_d < states.d[tgt]
    tgt, cand_d, cand_center, cand_orig = (
        tgt[wins], cand_d[wins], cand_center[wins], cand_orig[wins],
    )
    newly = int(np.count_nonzero(~np.isfinite(states.d[tgt])))
    states.d[tgt] = cand_d
    states.center[tgt] = cand_center
    states.d_orig[tgt] = cand_orig
    states.epoch[tgt] = step_index
    return StepOutcome(tgt.size > 0, tgt, offers, newly)


def run_growth_phase(
    wg: WorkingGraph,
    states: NodeStates,
    delta: float,
    stop: str = "until-quiescent",
    budget: StepBudget | None = None,
    metrics: RunMetrics | None = None,
    frontier: np.ndarray | None = None,
) -> PhaseResult:
    """Run growing steps until the stop rule fires.

    stop='until-quiescent' ends when a step updates nothing (that
    confirming step is counted) or the sender frontier empties (no extra
    step needed).  stop='until-half-covered-or-quiescent' additionally ends
    once at least half of the active working nodes are covered, checked
    after each step.  A budget caps the number of steps in this phase.
    """
    if stop not in ("until-quiescent", "until-half-covered-or-quiescent"):
        raise ValidationError(f"unknown stop rule {stop!r}")
    if metrics is None:
        metrics = RunMetrics()
    t0 = time.perf_counter()
    half_target = wg.active_count  # compare 2*covered >= active_count
    covered_now = int(np.count_nonzero(states.covered() & wg.active))

    if frontier is None:
        frontier = np.flatnonzero(states.covered() & wg.active)

    steps = 0
    reason = "quiescent"
    while True:
        senders = frontier[states.d[frontier] < delta]
        if senders.size == 0:
            reason = "quiescent"
            break
        out = delta_growing_step(wg, states, delta, senders, metrics.growing_steps + 1)
        steps += 1
        metrics.growing_steps += 1
        metrics.rounds += 1
        metrics.messages += out.offers
        metrics.node_updates += out.updated.size
        covered_now += out.newly_covered
        if not out.changed:
            reason = "quiescent"
            break
        if stop == "until-half-covered-or-quiescent" and 2 * covered_now >= half_target:
            reason = "half-covered"
            break
        if budget is not None and budget.max_steps is not None and steps >= budget.max_steps:
            reason = "budget"
            break
        frontier = out.updated
    metrics.wall_time += time.perf_counter() - t0
    return PhaseResult(reason, steps)
