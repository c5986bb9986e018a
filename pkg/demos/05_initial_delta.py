"""
Why the growth threshold starts small
=====================================

On two-point weights (mostly microscopic, occasionally unit) the
decomposition self-tunes: starting from the minimum weight it doubles
only as far as the local scale demands, so clusters stay tight and the
quotient keeps the big edges visible.  Seeding the threshold near the
diameter instead swallows whole regions into single clusters and the
padding dominates the estimate.
"""

from __future__ import annotations

from clusterdiam import (
    Rng,
    WeightModel,
    approximate_diameter,
    assign_weights,
    generate_mesh,
    iterated_sssp_lower,
)

g = assign_weights(
    generate_mesh(128),
    WeightModel("two-point", p=0.1, w_small=1e-6, w_big=1.0),
    Rng(0),
)
lower = iterated_sssp_lower(g, 0)
print(f"graph: mesh(128), two-point weights; diameter is at least {lower:.4f}")
print()

# run A: threshold seeded at the smallest edge weight
a = approximate_diameter(g, rng=Rng(1), delta_init="min")
print(
    f"delta_init=min    : phi={a.phi_approx:>8.4f} ratio={a.phi_approx / lower:5.2f} "
    f"radius={a.radius:.2e}"
)

# run B: threshold seeded at the scale of the answer itself
b = approximate_diameter(g, rng=Rng(1), delta_init=lower)
print(
    f"delta_init=answer : phi={b.phi_approx:>8.4f} ratio={b.phi_approx / lower:5.2f} "
    f"radius={b.radius:.2e}"
)

print()
print(
    "starting small keeps the radius microscopic, so nearly all of the\n"
    "estimate comes from the quotient; starting at the answer scale inflates\n"
    "the radius padding by orders of magnitude."
)
