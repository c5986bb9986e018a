"""
Watching clusters grow
======================

Runs the progressive cluster decomposition on a weighted mesh at a few
granularities and prints what the target-size knob tau controls: how
many clusters come out, how far they reach, and how large the growth
threshold had to get.
"""

from __future__ import annotations

import numpy as np

from clusterdiam import Rng, WeightModel, assign_weights, cluster, cluster2, generate_mesh

g = assign_weights(generate_mesh(48), WeightModel("uniform"), Rng(1))
print(f"graph: mesh(48) with uniform weights, n={g.n} m={g.m}")
print()

# tau is the expected cluster size the sampler aims for: larger tau
# means fewer, wider clusters and a larger final growth threshold.
# (past tau ~ n / (8 log n) the sampler would overshoot the graph, so
# the decomposition falls back to all-singleton clusters of radius 0)
print("tau  clusters  stages  radius   delta_end")
for tau in (2, 8, 24):
    res = cluster(g, tau=tau, rng=Rng(42))
    print(
        f"{tau:>3}  {res.cluster_count:>8}  {res.stages:>6}  "
        f"{res.radius:>6.3f}  {res.delta_end:>9.4f}"
    )

# every node belongs to exactly one cluster and carries its distance to
# the cluster center, so the decomposition is a complete cover
res = cluster(g, tau=24, rng=Rng(42))
assert np.all(res.center_of >= 0)
assert res.radius == res.d_orig.max()
print()
print(f"cover check: every node assigned, max center distance {res.radius:.3f}")

# the two-phase variant probes for a radius estimate first, then grows
# every sampled batch at that fixed threshold
res2 = cluster2(g, tau=24, rng=Rng(42))
print(
    f"two-phase at tau=24: {res2.cluster_count} clusters, "
    f"probe radius {res2.probe_radius:.3f}, final radius {res2.radius:.3f}"
)
