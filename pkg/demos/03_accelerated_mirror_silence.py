#!/usr/bin/env python3
"""A uniformly accelerated mirror is silent in the inertial vacuum.

The hyperbolic worldline z^2 - t^2 = 1/a^2 reflects inertial right-movers
through the map u -> -1/(a^2 u), a Moebius transformation.  Since the
radiated flux is controlled by the Schwarzian derivative of the
reflection map, and Moebius maps have exactly zero Schwarzian, the
inertial vacuum stays an exact vacuum to the right of this mirror: no
radiation at all.  (Radiation appears only when the initial state is the
wedge vacuum, or the trajectory is not Moebius-reflecting.)
"""

from mirrorstress import (
    Point,
    build_scenario,
    expectation_stress,
    get_chart,
    reflection_map,
    schwarzian_derivative,
    uniformly_accelerated_mirror,
)
from mirrorstress.jets import lead_value

a = 1.3
mirror = uniformly_accelerated_mirror(a)
refl = reflection_map(mirror)

print(f"hyperbolic mirror, proper acceleration a = {a:g}:")
for t in (-2.0, 0.0, 1.5):
    u, v = mirror.position(t)
    print(f"  t = {t:5.2f}: (U, V) = ({u:+.6f}, {v:+.6f}), "
          f"U V = {u * v:+.6f}  (should be -1/a^2 = {-1/a**2:+.6f})")

print("\nreflection map and its Schwarzian derivative:")
for u in (-4.0, -1.0, -0.25):
    p = lead_value(refl.p(u))
    s = schwarzian_derivative(refl.p, u)
    print(f"  u = {u:6.2f}: p(u) = {p:+.6f}, schwarzian = {s:+.2e}")

sc = build_scenario("accelerated_mirror_minkowski", {"a": a})
mink = get_chart("minkowski")
print("\nstress right of the mirror in the inertial vacuum:")
for u, v in [(-3.0, 2.0), (-0.8, 4.0), (-10.0, 0.5)]:
    s = expectation_stress(sc.state, mink, Point(u, v, "minkowski"))
    print(f"  (u, v) = ({u:5.1f}, {v:4.1f}): "
          f"T_uu = {s.t_uu:+.1e}, T_vv = {s.t_vv:+.1e}")
print("  all components vanish: an accelerated mirror radiates into a")
print("  stationary vacuum, not into its own.")
