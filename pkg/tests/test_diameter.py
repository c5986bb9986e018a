from __future__ import annotations

import numpy as np
import pytest

from clusterdiam import oracle
from clusterdiam.clustering import ClusteringResult, cluster
from clusterdiam.diameter import (
    QUOTIENT_EXACT_LIMIT,
    approximate_diameter,
    build_quotient,
    default_tau,
    quotient_diameter,
)
from clusterdiam.engine import RunMetrics
from clusterdiam.errors import SizeLimitError, ValidationError
from clusterdiam.generators import generate_mesh, generate_rmat
from clusterdiam.graph import WeightModel, assign_weights, build_graph
from clusterdiam.rng import Rng
from conftest import make_path, random_graph


def _hand_clustering(g, center_of, d_orig):
    center_of = np.asarray(center_of, dtype=np.int64)
    d_orig = np.asarray(d_orig, dtype=np.float64)
    centers = np.unique(center_of)
    return ClusteringResult(
        algorithm="cluster",
        tau=1,
        center_of=center_of,
        d_orig=d_orig,
        centers=centers,
        radius=float(d_orig.max()),
        stages=1,
        metrics=RunMetrics(),
        delta_end=1.0,
    )


def test_quotient_weight_adds_both_offsets():
    # unit path 0-1-2-3 split into clusters {0,1} and {2,3}: the quotient
    # edge spans centers 0 and 3 with weight w(1,2) + d(0,1) + d(3,2)
    g = make_path([1.0, 1.0, 1.0])
    clustering = _hand_clustering(g, [0, 0, 3, 3], [0.0, 1.0, 1.0, 0.0])
    q = build_quotient(g, clustering)
    assert q.node_count == 2
    assert q.edge_count == 1
    assert q.graph.edge_w[0] == 3.0


def test_quotient_parallel_edges_keep_minimum():
    # two clusters joined by two parallel original edges with different
    # effective lengths
    g = build_graph(
        4,
        np.array([0, 2, 0, 1]),
        np.array([1, 3, 2, 3]),
        np.array([1.0, 1.0, 5.0, 2.0]),
    )
    clustering = _hand_clustering(g, [0, 0, 3, 3], [0.0, 1.0, 1.0, 0.0])
    q = build_quotient(g, clustering)
    assert q.edge_count == 1
    # candidates: 5 + 0 + 1 = 6 and 2 + 1 + 0 = 3
    assert q.graph.edge_w[0] == 3.0


def test_quotient_no_intercluster_edges():
    g = build_graph(4, np.array([0, 2]), np.array([1, 3]), np.ones(2))
    clustering = _hand_clustering(g, [0, 0, 2, 2], [0.0, 1.0, 0.0, 1.0])
    q = build_quotient(g, clustering)
    assert q.edge_count == 0


def test_quotient_diameter_mode_flip():
    g = make_path([1.0] * 9)
    clustering = _hand_clustering(g, list(range(10)), [0.0] * 10)
    q = build_quotient(g, clustering)
    exact_val, exact_mode = quotient_diameter(q)
    assert exact_mode == "exact" and exact_val == 9.0
    approx_val, approx_mode = quotient_diameter(q, exact_limit=4)
    assert approx_mode == "2-approx"
    assert exact_val <= approx_val <= 2 * exact_val


def test_quotient_size_limit():
    g = make_path([1.0] * 9)
    clustering = _hand_clustering(g, list(range(10)), [0.0] * 10)
    q = build_quotient(g, clustering)
    with pytest.raises(SizeLimitError):
        quotient_diameter(q, size_limit=5)


def test_estimate_upper_bounds_exact():
    for seed in range(5):
        g = random_graph(seed + 400, n_max=150)
        exact = oracle.exact_diameter(g)
        for algo in ("cluster", "cluster2"):
            est = approximate_diameter(g, tau=4, rng=Rng(seed), algorithm=algo)
            assert est.phi_approx >= exact - 1e-9


def test_singleton_regime_is_exact():
    # tiny graph: the guard keeps everything singleton, the quotient is the
    # graph itself, and the estimate equals the true diameter
    g = make_path([2.0, 3.0, 1.0])
    est = approximate_diameter(g, tau=1, rng=Rng(5))
    assert est.phi_approx == 6.0
    assert est.radius == 0.0
    assert est.cluster_count == 4


def test_pipeline_frozen_run():
    g = assign_weights(generate_mesh(8), WeightModel("uniform"), Rng(5))
    est = approximate_diameter(g, tau=8, rng=Rng(2), algorithm="cluster")
    assert est.phi_approx == pytest.approx(4.710754906738031)
    assert est.radius == 0.0
    assert est.cluster_count == 64
    assert est.metrics.rounds == 2
    assert est.metrics.work == 112


def test_two_component_graph_takes_worst_component():
    # one component of diameter 2, one of diameter 3
    g = build_graph(
        7,
        np.array([0, 1, 3, 4, 5]),
        np.array([1, 2, 4, 5, 6]),
        np.ones(5),
    )
    est = approximate_diameter(g, tau=2, rng=Rng(1))
    assert est.phi_approx >= 3.0


def test_center_assignment_round_trips_to_original_ids():
    g = build_graph(6, np.array([0, 1, 3, 4]), np.array([1, 2, 4, 5]), np.ones(4))
    est = approximate_diameter(g, tau=2, rng=Rng(1))
    labels = np.array([0, 0, 0, 3, 3, 3])
    # each node's center lives in its own component
    assert np.all(labels[est.center_of] == labels[np.arange(6)])


def test_default_tau_properties():
    assert default_tau(1) == 1
    assert default_tau(100) == 1
    n = 128 * 128
    tau = default_tau(n)
    from clusterdiam.clustering import log_factor

    assert 8 * tau * log_factor(n) <= n  # stage loop reachable
    assert tau >= 1


def test_validation():
    g = make_path([1.0])
    with pytest.raises(ValidationError):
        approximate_diameter(g, tau=5, rng=Rng(0))
    with pytest.raises(ValidationError):
        approximate_diameter(g, algorithm="bfs")


def test_quality_on_mesh_is_reasonable():
    g = assign_weights(generate_mesh(16), WeightModel("uniform"), Rng(3))
    exact = oracle.exact_diameter(g)
    est = approximate_diameter(g, tau=4, rng=Rng(0), algorithm="cluster")
    assert exact <= est.phi_approx <= 3 * exact


def test_rmat_estimate_conservative():
    g = assign_weights(generate_rmat(8, Rng(2)), WeightModel("uniform"), Rng(3))
    exact = oracle.exact_diameter(g)
    est = approximate_diameter(g, tau=8, rng=Rng(1), algorithm="cluster2")
    assert est.phi_approx >= exact - 1e-9
