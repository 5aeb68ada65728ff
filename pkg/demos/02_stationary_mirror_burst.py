#!/usr/bin/env python3
"""A mirror at rest radiates into the wedge vacuum.

A perfectly reflecting mirror sits at z = 1/a.  To accelerated observers
it enters the wedge along the past horizon, crosses, and leaves along
the future horizon; if the field starts in the wedge vacuum, the mirror
reflects the negative energy piled up near the horizon into an outgoing
burst.  In inertial coordinates the outgoing flux is

    T_uu = -(1/48 pi) a^2 / (2 + a u)^2 ,

finite on the old horizon ray u = 0 (the wedge divergence is gone) but
singular at the earlier retarded time u = -2/a where the reflected
horizon flux emerges.
"""

import math

from mirrorstress import (
    Point,
    asymptotes,
    build_scenario,
    expectation_stress,
    get_chart,
    stationary_mirror,
    to_chart,
    to_orthonormal_frame,
)

a = 1.0
rind = get_chart("rindler")
mink = get_chart("minkowski")
sc = build_scenario("mirror_in_rindler_vacuum", {"a": a})

bar = to_chart(stationary_mirror(1.0 / a), rind)
asym = asymptotes(bar)
print(f"mirror worldline in the wedge chart, a = {a:g}:")
print(f"  crosses the wedge for t in ({-1/a:g}, {1/a:g})")
print(f"  past null asymptote  u* = {asym.past_null_asymptote:+.6f}"
      f"   (log(a/2) = {math.log(a/2):+.6f})")
print(f"  future null asymptote v* = {asym.future_null_asymptote:+.6f}")

print("\noutgoing flux profile in the wedge chart (v* = 2):")
print(f"  {'u*':>8s} {'T_u*u*':>14s} {'flux (orthonormal)':>20s}")
for ub in (-0.6, -0.3, 0.0, 1.0, 2.0, 4.0):
    s = expectation_stress(sc.state, rind, Point(ub, 2.0, "rindler"))
    o = to_orthonormal_frame(s)
    print(f"  {ub:8.2f} {s.t_uu:14.6e} {o.flux:20.6e}")
print("  (below u* = log(a/2) the value stays at the undisturbed wedge")
print("   constant; the burst grows as the entry ray is approached)")

print("\ninertial-chart landmarks (v = u + 2/a + 1):")
for u, label in [(-1.999, "just outside the burst ray u = -2/a"),
                 (-1.0, "between burst and horizon"),
                 (0.0, "old horizon ray u = 0, now finite"),
                 (10.0, "late retarded times, dying off")]:
    s = expectation_stress(sc.state, mink,
                           Point(u, u + 2.0 / a + 1.0, "minkowski"))
    print(f"  u = {u:8.3f}: T_uu = {s.t_uu:+.6e}   {label}")
print(f"  |T_uu(u=0)| = a^2/(192 pi) = {a*a/(192*math.pi):.6e}")
