from __future__ import annotations

import heapq
import math

import numpy as np
import pytest

from clusterdiam.engine import (
    NodeStates,
    RunMetrics,
    StepBudget,
    WorkingGraph,
    run_growth_phase,
)
from clusterdiam.errors import ValidationError
from clusterdiam.graph import Graph, build_graph
from conftest import random_graph


def _grow(g: Graph, centers, delta, stop="until-quiescent", budget=None):
    wg = WorkingGraph.from_graph(g)
    states = NodeStates.fresh(g.n)
    states.activate_centers(np.asarray(centers, dtype=np.int64))
    metrics = RunMetrics()
    result = run_growth_phase(wg, states, delta, stop, budget, metrics)
    return states, metrics, result


def _light_dijkstra(g: Graph, centers, delta):
    """Reference: multi-source shortest paths using only edges <= delta,
    truncated at distance delta."""
    dist = {c: 0.0 for c in centers}
    heap = [(0.0, c) for c in centers]
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist.get(u, math.inf):
            continue
        nbrs, ws = g.neighbors(u)
        for v, w in zip(nbrs, ws):
            if w > delta:
                continue
            nd = d + w
            if nd <= delta and nd < dist.get(int(v), math.inf):
                dist[int(v)] = nd
                heapq.heappush(heap, (nd, int(v)))
    return dist


# --- frozen step-count examples ---------------------------------------------


def test_unit_path3_two_steps(unit_path4):
    g = build_graph(3, np.array([0, 1]), np.array([1, 2]), np.ones(2))
    states, metrics, result = _grow(g, [0], delta=2.0)
    assert metrics.growing_steps == 2
    assert result.stop_reason == "quiescent"
    assert list(states.d) == [0.0, 1.0, 2.0]
    assert list(states.center[:3]) == [0, 0, 0]


def test_unit_path3_budget_one_step():
    g = build_graph(3, np.array([0, 1]), np.array([1, 2]), np.ones(2))
    states, metrics, result = _grow(g, [0], delta=2.0, budget=StepBudget(1))
    assert metrics.growing_steps == 1
    assert result.stop_reason == "budget"
    assert states.d[1] == 1.0 and math.isinf(states.d[2])


def test_star_one_productive_plus_one_confirming(unit_star6):
    # delta above every spoke weight: leaves adopt in step 1, then send
    # fruitless offers back in step 2, which detects quiescence
    states, metrics, _ = _grow(unit_star6, [0], delta=2.0)
    assert metrics.growing_steps == 2
    assert np.all(states.d[1:] == 1.0)


def test_star_delta_equal_weight_skips_confirming(unit_star6):
    # at d == delta a node can never make a valid offer, so the frontier
    # filter empties and no confirming step is spent
    states, metrics, _ = _grow(unit_star6, [0], delta=1.0)
    assert metrics.growing_steps == 1
    assert np.all(states.d[1:] == 1.0)


def test_budget_validation():
    with pytest.raises(ValidationError):
        StepBudget(0)
    with pytest.raises(ValidationError):
        _grow(build_graph(2, np.array([0]), np.array([1]), np.ones(1)), [0], 1.0,
              stop="until-everything")


# --- oracle-backed semantics -------------------------------------------------


@pytest.mark.parametrize("seed", range(8))
def test_quiescent_states_match_light_dijkstra(seed):
    g = random_graph(seed, n_max=40)
    rng = np.random.default_rng(seed)
    centers = sorted(set(rng.integers(0, g.n, size=max(1, g.n // 8)).tolist()))
    delta = float(rng.uniform(0.2, 2.5))
    states, _, _ = _grow(g, centers, delta)
    want = _light_dijkstra(g, centers, delta)
    for v in range(g.n):
        if v in want:
            assert states.d[v] == pytest.approx(want[v], abs=1e-12)
        else:
            assert math.isinf(states.d[v])


@pytest.mark.parametrize("seed", range(4))
def test_larger_delta_covers_superset(seed):
    g = random_graph(seed + 50, n_max=40)
    centers = [0]
    small, _, _ = _grow(g, centers, 0.5)
    large, _, _ = _grow(g, centers, 1.5)
    assert set(np.flatnonzero(np.isfinite(small.d))) <= set(
        np.flatnonzero(np.isfinite(large.d))
    )


def test_deterministic_across_runs():
    g = random_graph(123, n_max=50)
    a, am, _ = _grow(g, [0, g.n - 1], 1.0)
    b, bm, _ = _grow(g, [0, g.n - 1], 1.0)
    assert np.array_equal(a.d, b.d)
    assert np.array_equal(a.center, b.center)
    assert (am.rounds, am.messages, am.node_updates) == (
        bm.rounds,
        bm.messages,
        bm.node_updates,
    )


def test_ties_break_to_smaller_center_id():
    # node 1 is at distance 1 from both centers 0 and 2
    g = build_graph(3, np.array([0, 1]), np.array([1, 2]), np.ones(2))
    states, _, _ = _grow(g, [0, 2], delta=1.0)
    assert states.center[1] == 0


def test_metrics_counts_on_path3():
    g = build_graph(3, np.array([0, 1]), np.array([1, 2]), np.ones(2))
    _, metrics, _ = _grow(g, [0], delta=2.0)
    # step 1: one offer (0->1), one adoption; step 2: two offers (1->0, 1->2),
    # one adoption
    assert metrics.messages == 3
    assert metrics.node_updates == 2
    assert metrics.rounds == metrics.growing_steps == 2
    assert metrics.work == 5


def test_heavy_edges_never_relax():
    g = build_graph(2, np.array([0]), np.array([1]), np.array([3.0]))
    states, _, _ = _grow(g, [0], delta=1.0)
    assert math.isinf(states.d[1])


def test_half_covered_stop():
    # long unit path, center at one end, huge delta: the half rule should
    # stop growth before the far end is reached
    n = 32
    u = np.arange(n - 1)
    g = build_graph(n, u, u + 1, np.ones(n - 1))
    states, _, result = _grow(g, [0], delta=float(n), stop="until-half-covered-or-quiescent")
    assert result.stop_reason == "half-covered"
    covered = int(np.isfinite(states.d).sum())
    assert n // 2 <= covered < n
