from __future__ import annotations

import numpy as np
import pytest

from clusterdiam.errors import ValidationError
from clusterdiam.generators import generate_mesh, generate_rmat, generate_roads_product
from clusterdiam.graph import build_graph
from clusterdiam.rng import Rng


@pytest.mark.parametrize("side", [1, 2, 3, 5, 8, 16])
def test_mesh_closed_form(side):
    g = generate_mesh(side)
    assert g.n == side * side
    assert g.m == 2 * side * (side - 1)


def test_mesh_3_matches_known_counts():
    g = generate_mesh(3)
    assert (g.n, g.m) == (9, 12)


def test_mesh_unit_weights():
    g = generate_mesh(4)
    assert np.all(g.edge_w == 1.0)


def test_mesh_is_grid():
    g = generate_mesh(3)
    # center node of a 3x3 grid has degree 4, corners degree 2
    degrees = sorted(g.degree(v) for v in range(9))
    assert degrees == [2, 2, 2, 2, 3, 3, 3, 3, 4]


def test_mesh_rejects_nonpositive():
    with pytest.raises(ValidationError):
        generate_mesh(0)


def test_rmat_node_and_sample_counts():
    g = generate_rmat(4, Rng(1))
    assert g.n == 16
    assert g.m <= 16 * 2**4


def test_rmat_golden_edge_count():
    # frozen: generate_rmat(4, Rng(1)) after symmetrize + dedup
    g = generate_rmat(4, Rng(1))
    assert g.m == 55


def test_rmat_deterministic():
    a = generate_rmat(6, Rng(9))
    b = generate_rmat(6, Rng(9))
    assert np.array_equal(a.edge_u, b.edge_u)
    assert np.array_equal(a.edge_v, b.edge_v)


def test_rmat_seeds_differ():
    a = generate_rmat(6, Rng(1))
    b = generate_rmat(6, Rng(2))
    assert a.m != b.m or not np.array_equal(a.edge_u, b.edge_u)


def test_rmat_skew():
    # power-law-ish: max degree far above mean degree
    g = generate_rmat(9, Rng(3))
    degs = np.array([g.degree(v) for v in range(g.n)])
    assert degs.max() > 4 * degs.mean()


def test_roads_product_counts():
    base = generate_mesh(3)
    for copies in (1, 2, 5):
        g = generate_roads_product(base, copies)
        assert g.n == copies * base.n
        assert g.m == copies * base.m + (copies - 1) * base.n


def test_roads_product_identity():
    base = generate_mesh(3)
    g = generate_roads_product(base, 1)
    assert g.n == base.n and g.m == base.m
    assert np.array_equal(g.edge_u, base.edge_u)


def test_roads_product_single_edge_base():
    base = build_graph(2, np.array([0]), np.array([1]), np.array([5.0]))
    g = generate_roads_product(base, 2)
    assert (g.n, g.m) == (4, 4)
    # base weights preserved inside copies, unit rungs between copies
    assert sorted(g.edge_w) == [1.0, 1.0, 5.0, 5.0]


def test_roads_product_layer_structure():
    base = build_graph(2, np.array([0]), np.array([1]), np.array([5.0]))
    g = generate_roads_product(base, 3)
    # node k*2+v is node v of copy k; rung edges connect v to v in next copy
    rungs = [(u, v) for u, v, w in zip(g.edge_u, g.edge_v, g.edge_w) if w == 1.0]
    assert sorted(rungs) == [(0, 2), (1, 3), (2, 4), (3, 5)]
