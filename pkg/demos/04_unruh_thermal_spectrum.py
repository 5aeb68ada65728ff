#!/usr/bin/env python3
"""Bogolubov coefficients and the thermal spectrum of the wedge.

Wave packets positive-frequency in wedge time are mixtures of inertial
positive- and negative-frequency packets.  The mixing obeys
|beta|^2 / |alpha|^2 = exp(-2 pi omega) (omega in wedge-frequency units),
so the inertial vacuum is a thermal state at temperature 1/(2 pi) for
accelerated observers; the occupation of a wedge packet follows the
Planck factor 1/(e^{2 pi omega} - 1).

Runs a deliberately small configuration; expect ~10 s.
"""

import math

import numpy as np

from mirrorstress import ModeBasis, compute_coefficients, get_chart
from mirrorstress.bogolubov import critical_packet_width

mink = get_chart("minkowski")
rind = get_chart("rindler")

freqs_inertial = np.geomspace(0.25, 4.0, 19)
inertial = ModeBasis(mink, frequencies=freqs_inertial,
                     packet_width=critical_packet_width(freqs_inertial))
wedge = ModeBasis(rind, frequencies=np.array([0.6, 0.9, 1.3]),
                  packet_width=0.05)

print("computing alpha/beta matrices (3 wedge rows x 19 inertial columns)")
pair = compute_coefficients(inertial, wedge, tol=1e-8)

print(f"\n  {'omega':>6s} {'|beta|^2/|alpha|^2':>19s} {'exp(-2 pi w)':>13s} "
      f"{'rel dev':>8s}")
for i, omega in enumerate(wedge.frequencies):
    a2 = np.abs(pair.alpha[i]) ** 2
    b2 = np.abs(pair.beta[i]) ** 2
    ratio = b2.sum() / a2.sum()
    want = math.exp(-2.0 * math.pi * omega)
    print(f"  {omega:6.2f} {ratio:19.6e} {want:13.6e} "
          f"{ratio / want - 1:+8.1%}")

print("\nthe residual deviation is the packet-width smearing of the")
print("sharp-mode ratio; it shrinks quadratically with the width.")
