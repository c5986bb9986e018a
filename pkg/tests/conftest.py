from __future__ import annotations

import numpy as np
import pytest

from clusterdiam.graph import Graph, build_graph


@pytest.fixture
def unit_path4() -> Graph:
    u = np.arange(3)
    return build_graph(4, u, u + 1, np.ones(3))


@pytest.fixture
def unit_star6() -> Graph:
    return build_graph(6, np.zeros(5, dtype=np.int64), np.arange(1, 6), np.ones(5))


def make_path(weights) -> Graph:
    w = np.asarray(weights, dtype=float)
    u = np.arange(w.size)
    return build_graph(w.size + 1, u, u + 1, w)


def random_graph(seed: int, n_max: int = 60) -> Graph:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, 3 * n))
    return build_graph(
        n,
        rng.integers(0, n, size=m),
        rng.integers(0, n, size=m),
        rng.uniform(0.05, 2.0, size=m),
    )
