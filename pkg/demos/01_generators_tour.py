"""
A tour of the graph generators
==============================

Builds each synthetic family, prints its shape, and shows how weight
models reshuffle edge weights deterministically.
"""

from __future__ import annotations

import numpy as np

from clusterdiam import (
    Rng,
    WeightModel,
    assign_weights,
    generate_mesh,
    generate_rmat,
    generate_roads_product,
)

# a mesh is the S x S grid with unit weights: n = S^2, m = 2*S*(S-1)
mesh = generate_mesh(8)
print(f"mesh(8):  n={mesh.n:>5} m={mesh.m:>5}  (closed form: 64 nodes, 112 edges)")

# the recursive-matrix family is skewed: a few nodes soak up most edges
rmat = generate_rmat(10, Rng(7))
deg = np.diff(rmat.indptr)
print(
    f"rmat(10): n={rmat.n:>5} m={rmat.m:>5}  "
    f"max degree {deg.max()} vs mean {deg.mean():.1f}"
)

# the roads product stacks C copies of a base graph and links them in a
# chain of heavier rungs, mimicking a tiled road atlas
base = generate_mesh(4)
roads = generate_roads_product(base, 6)
print(f"roads(6 x mesh(4)): n={roads.n:>5} m={roads.m:>5}")

# weight models replace the stored weights without touching the topology.
# the draw is keyed per edge, so edge order and seed fully determine it.
uniform = assign_weights(mesh, WeightModel("uniform"), Rng(3))
again = assign_weights(mesh, WeightModel("uniform"), Rng(3))
other = assign_weights(mesh, WeightModel("uniform"), Rng(4))
print()
print("uniform weights, seed 3 :", np.round(uniform.edge_w[:5], 4))
print("same seed, same weights :", np.round(again.edge_w[:5], 4))
print("seed 4 differs          :", np.round(other.edge_w[:5], 4))

# two-point weights model "mostly tiny, occasionally huge" metrics
two = assign_weights(mesh, WeightModel("two-point", p=0.1, w_small=1e-6, w_big=1.0), Rng(5))
big = int((two.edge_w == 1.0).sum())
print(f"two-point(p=0.1): {big}/{two.m} big edges (expect ~{0.1 * two.m:.0f})")
