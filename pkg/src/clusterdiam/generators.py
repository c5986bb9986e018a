"""Synthetic graph families used by the benchmarks.

- mesh(S): S x S grid, unit weights, n = S^2, m = 2*S*(S-1)
- rmat(S): recursive-matrix sampler, n = 2^S, 16*2^S directed edge draws
  with quadrant probabilities (0.57, 0.19, 0.19, 0.05), noise-free,
  symmetrized and deduplicated
- roads_product(base, S): S-node unit-weight path graph crossed with a base
  graph: S stacked copies of the base plus unit edges between consecutive
  copies of each node; n = S*n_base, m = S*m_base + (S-1)*n_base
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .graph import Graph, build_graph
from .rng import Rng

__all__ = ["generate_mesh", "generate_rmat", "generate_roads_product", "RMAT_QUADRANTS"]

# quadrant split probabilities (a, b, c, d): top-left, top-right,
# bottom-left, bottom-right of the recursive adjacency-matrix subdivision
RMAT_QUADRANTS = (0.57, 0.19, 0.19, 0.05)

_RMAT_EDGE_FACTOR = 16
_STREAM_RMAT = 0x524D4154  # "RMAT"


def generate_mesh(side: int) -> Graph:
    """S x S grid with unit weights."""
    if side < 1:
        raise ValidationError("mesh side must be >= 1")
    s = int(side)
    ids = np.arange(s * s, dtype=np.int64).reshape(s, s)
    right_u = ids[:, :-1].ravel()
    right_v = ids[:, 1:].ravel()
    down_u = ids[:-1, :].ravel()
    down_v = ids[1:, :].ravel()
    u = np.concatenate([right_u, down_u])
    v = np.concatenate([right_v, down_v])
    w = np.ones(u.size, dtype=np.float64)
    return build_graph(s * s, u, v, w, meta={"name": f"mesh({s})", "weights": "unit"})


def generate_rmat(scale: int, rng: Rng) -> Graph:
    """Recursive-matrix graph: n = 2^scale, 16*2^scale directed samples.

    Each sample walks `scale` levels of the quadrant subdivision; the
    quadrant at (sample i, level l) is a keyed draw, so the edge list is a
    pure function of the seed.  Self-loops and duplicates vanish in graph
    construction, so the final undirected m is at most 16*2^scale.
    """
    if scale < 1:
        raise ValidationError("rmat scale must be >= 1")
    n = 1 << scale
    n_samples = _RMAT_EDGE_FACTOR * n
    stream = rng.derive(_STREAM_RMAT)
    a, b, c, _ = RMAT_QUADRANTS
    src = np.zeros(n_samples, dtype=np.int64)
    dst = np.zeros(n_samples, dtype=np.int64)
    sample_ids = np.arange(n_samples, dtype=np.uint64)
    for level in range(scale):
        u = stream.derive(level).u01(sample_ids)
        src_bit = (u >= a + b).astype(np.int64)
        dst_bit = ((u >= a) & (u < a + b) | (u >= a + b + c)).astype(np.int64)
        src = (src << 1) | src_bit
        dst = (dst << 1) | dst_bit
    w = np.ones(n_samples, dtype=np.float64)
    return build_graph(n, src, dst, w, meta={"name": f"rmat({scale})", "weights": "unit"})


def generate_roads_product(base: Graph, copies: int) -> Graph:
    """Path(S) x base product: node (k, v) gets id k*n_base + v.

    Every copy keeps the base's edge weights; the S-1 inter-copy edges per
    base node have unit weight.
    """
    if copies < 1:
        raise ValidationError("copies must be >= 1")
    s = int(copies)
    nb = base.n
    offsets = np.arange(s, dtype=np.int64) * nb

    layer_u = (base.edge_u[None, :] + offsets[:, None]).ravel()
    layer_v = (base.edge_v[None, :] + offsets[:, None]).ravel()
    layer_w = np.broadcast_to(base.edge_w, (s, base.m)).ravel()

    node_ids = np.arange(nb, dtype=np.int64)
    rung_u = (node_ids[None, :] + offsets[:-1, None]).ravel()
    rung_v = rung_u + nb
    rung_w = np.ones(rung_u.size, dtype=np.float64)

    u = np.concatenate([layer_u, rung_u])
    v = np.concatenate([layer_v, rung_v])
    w = np.concatenate([layer_w, rung_w])
    base_name = base.meta.get("name", "base")
    return build_graph(
        s * nb, u, v, w,
        meta={"name": f"roads_product({base_name},S={s})", "weights": "mixed"},
    )
