#!/usr/bin/env python3
"""The wedge vacuum and its negative energy density.

The chart adapted to uniformly accelerated observers covers the wedge
z > |t|.  Its vacuum carries constant null stress -1/(48 pi) in both
outgoing and incoming components, which in a local orthonormal frame is
an energy density -1/(24 pi rho^2), diverging toward the horizon at
rho = 0.  The difference from the inertial vacuum is exactly +1/(48 pi)
per null component: the thermal bath an accelerated detector sees.
"""

import math

from mirrorstress import (
    INV_24PI,
    INV_48PI,
    Point,
    VacuumSpec,
    expectation_stress,
    get_chart,
    theta_components,
    to_orthonormal_frame,
)

rind = get_chart("rindler")
mink = get_chart("minkowski")
wedge_vacuum = VacuumSpec(rind, "full_line", label="rindler_vacuum")
inertial_vacuum = VacuumSpec(mink, "full_line", label="minkowski_vacuum")

print("wedge-chart null components (constant everywhere):")
s = theta_components(wedge_vacuum, Point(0.3, -1.1, "rindler"))
print(f"  T_uu = T_vv = {s.t_uu:+.10f}   (-1/48pi = {-INV_48PI:+.10f})")
print(f"  T_uv = {s.t_uv:+.1e}")

print("\nenergy density against distance from the horizon:")
print(f"  {'rho':>8s} {'energy density':>16s} {'-1/(24 pi rho^2)':>18s}")
for rho in (0.1, 0.5, 1.0, 2.0, 10.0):
    zeta = math.log(rho)
    o = to_orthonormal_frame(
        theta_components(wedge_vacuum, Point(-zeta, zeta, "rindler")))
    print(f"  {rho:8.2f} {o.energy_density:16.8f} {-INV_24PI / rho**2:18.8f}")

print("\ninertial vacuum seen in wedge components, minus the wedge vacuum:")
p = Point(0.8, -0.2, "rindler")
tm = expectation_stress(inertial_vacuum, rind, p)
tr = theta_components(wedge_vacuum, p)
print(f"  difference T_uu: {tm.t_uu - tr.t_uu:+.10f}"
      f"   (+1/48pi = {INV_48PI:+.10f})")
print("  the positive energy of the thermal bath cancels the wedge")
print("  vacuum's negative stress in the inertial ground state.")
