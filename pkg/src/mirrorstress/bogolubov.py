"""Bogolubov coefficients between chart-vacuum mode bases.

Sharp continuum modes are tamed by Gaussian wave packets in
log-frequency: the packet with center frequency w_i and width sigma has
frequency profile

    k_i(w) = A w^{-1/2} exp(-(ln w - ln w_i)^2 / (4 sigma^2)),
    A = (sigma sqrt(2 pi))^{-1/2},

which makes same-chart packet overlaps exactly Gaussian in log-frequency,
(f_i, f_j) = exp(-(ln w_i - ln w_j)^2 / (8 sigma^2)), and keeps every
packet strictly positive-frequency in its chart's time.

All Klein-Gordon pairings are adaptive quadratures over a constant-time
surface of the base chart, with a change of variable that makes wedge
(logarithmically piled-up) phases linear in the integration parameter.
This module is a verification companion: the stress pipeline never calls
into it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .charts import ConformalChart

__all__ = [
    "ModeBasis",
    "BogolubovPair",
    "QuadReport",
    "kg_inner_product",
    "compute_coefficients",
    "expected_number",
    "row_normalization",
    "default_frequencies",
    "critical_packet_width",
]

_SUPPORT_EPS = 1e-10
_SUPPORT_PAD = 1.35


def default_frequencies(n: int = 32, lo: float = 0.1, hi: float = 10.0):
    return np.geomspace(lo, hi, n)


def critical_packet_width(frequencies) -> float:
    """Width for which the family resolves the identity: neighbouring
    packets spaced d in log-frequency with sigma = d / sqrt(8 pi) sum to
    a unit-density frame on broad smooth content."""
    lam = np.log(np.asarray(frequencies, dtype=float))
    d = float(np.mean(np.diff(lam)))
    return d / math.sqrt(8.0 * math.pi)


# ---------- Gauss-Kronrod 7/15 panel rule ----------

_K15_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_K15_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_G7_WEIGHTS = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])
_G7_IDX = np.array([1, 3, 5, 7, 9, 11, 13])


def _adaptive_gk(f, a: float, b: float, tol: float,
                 max_panels: int = 4096):
    """Globally adaptive G7/K15 with batched integrand evaluation.

    Returns (integral, error_estimate, n_evaluations).  Panels are split
    in deterministic waves, worst errors first.
    """
    edges = np.linspace(a, b, 17)
    starts, ends = edges[:-1], edges[1:]
    integrals = np.zeros(0, dtype=complex)
    errors = np.zeros(0, dtype=float)
    lo_all = np.zeros(0)
    hi_all = np.zeros(0)
    n_evals = 0

    def refine(lo, hi):
        nonlocal n_evals
        mid = 0.5 * (lo + hi)[:, None]
        half = 0.5 * (hi - lo)[:, None]
        xs = mid + half * _K15_NODES[None, :]
        vals = f(xs.ravel()).reshape(xs.shape)
        n_evals += xs.size
        k15 = (vals * _K15_WEIGHTS[None, :]).sum(axis=1) * half[:, 0]
        g7 = (vals[:, _G7_IDX] * _G7_WEIGHTS[None, :]).sum(axis=1) * half[:, 0]
        return k15, np.abs(k15 - g7)

    k15, err = refine(starts, ends)
    integrals, errors = k15, err
    lo_all, hi_all = starts, ends
    for _ in range(60):
        total_err = float(errors.sum())
        if total_err <= tol or len(errors) >= max_panels:
            break
        budget = tol / max(1, len(errors))
        split = errors > 0.25 * budget
        worst = np.argsort(errors)[::-1][:max(1, len(errors) // 2)]
        mask = np.zeros(len(errors), bool)
        mask[worst] = True
        mask &= split
        if not mask.any():
            break
        keep = ~mask
        lo_s, hi_s = lo_all[mask], hi_all[mask]
        mid_s = 0.5 * (lo_s + hi_s)
        new_lo = np.concatenate([lo_s, mid_s])
        new_hi = np.concatenate([mid_s, hi_s])
        k15_new, err_new = refine(new_lo, new_hi)
        lo_all = np.concatenate([lo_all[keep], new_lo])
        hi_all = np.concatenate([hi_all[keep], new_hi])
        integrals = np.concatenate([integrals[keep], k15_new])
        errors = np.concatenate([errors[keep], err_new])
    # fixed summation order for reproducibility
    order = np.argsort(lo_all, kind="stable")
    return (complex(integrals[order].sum()), float(errors.sum()),
            n_evals)


# ---------- mode bases and packets ----------

@dataclass(frozen=True, eq=False)
class ModeBasis:
    """A family of positive-frequency wave packets on one chart.

    ``sector`` picks the right-moving ('u') or left-moving ('v') family
    for full-line charts; Dirichlet bases combine both into standing
    packets that vanish on the boundary.
    """

    chart: ConformalChart
    boundary: str = "full_line"
    frequencies: np.ndarray = field(default_factory=default_frequencies)
    packet_width: float = 0.5
    sector: str = "u"
    label: str = ""

    def __post_init__(self):
        freqs = np.asarray(self.frequencies, dtype=float)
        object.__setattr__(self, "frequencies", freqs)
        if freqs.ndim != 1 or len(freqs) == 0:
            raise ValueError("frequencies must be a non-empty 1-d grid")
        if not (freqs > 0).all() or not (np.diff(freqs) > 0).all():
            raise ValueError("frequencies must be positive and increasing")
        if self.packet_width <= 0:
            raise ValueError("packet_width must be positive")
        if self.boundary not in ("full_line", "dirichlet_half_line"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if self.sector not in ("u", "v"):
            raise ValueError("sector must be 'u' or 'v'")

    def __len__(self):
        return len(self.frequencies)

    def packet(self, i: int):
        if self.boundary == "full_line":
            return _TravelingPacket(self.chart, self.sector,
                                    float(self.frequencies[i]),
                                    self.packet_width)
        return _StandingPacket(self.chart, float(self.frequencies[i]),
                               self.packet_width)

    def packets(self):
        return [self.packet(i) for i in range(len(self))]


@functools.lru_cache(maxsize=128)
def _leggauss(m: int):
    return np.polynomial.legendre.leggauss(m)


class _PacketCore:
    """Frequency-space discretization shared by packet kinds.

    The packet is evaluated as a Gauss-Legendre sum over log-frequency
    and hard-cut beyond its support radius, where the true envelope is
    below the support threshold; the cut keeps under-resolved quadrature
    tails from aliasing into spurious amplitude."""

    def __init__(self, lam_c: float, sigma: float, norm: float):
        self.lam_c = lam_c
        self.sigma = sigma
        self.omega_c = math.exp(lam_c)
        span = 7.0 * math.sqrt(2.0) * sigma
        self.radius = self.support_radius()
        phase = math.exp(lam_c + span) * self.radius
        m = int(min(12032, 72 + 0.55 * phase))
        # composite 64-point panels: one cached rule, any total node count
        panels = max(2, (m + 63) // 64)
        base_nodes, base_weights = _leggauss(64)
        edges = np.linspace(-span, span, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
        half = 0.5 * (edges[1] - edges[0])
        lam = lam_c + (mid + half * base_nodes[None, :]).ravel()
        weights = np.tile(base_weights * half, panels)
        gauss = np.exp(-((lam - lam_c) ** 2) / (4.0 * sigma ** 2))
        amp = (sigma * math.sqrt(2.0 * math.pi)) ** -0.5
        self.omegas = np.exp(lam)
        self.coeffs = weights * gauss * amp * norm
        self.m = panels * 64

    def support_radius(self) -> float:
        """Half-width, in the packet's phase coordinate, outside which the
        envelope is below the support threshold."""
        root = math.sqrt(math.log(1.0 / _SUPPORT_EPS))
        linear = root / (self.sigma * self.omega_c)
        logtail = math.exp(2.0 * self.sigma * root) / self.omega_c
        return _SUPPORT_PAD * max(linear, logtail)

    def wave(self, coord):
        """Sum over the frequency nodes of e^{-i w c} and its c-derivative."""
        coord = np.asarray(coord, dtype=float)
        vals = np.zeros(coord.shape, dtype=complex)
        dvals = np.zeros(coord.shape, dtype=complex)
        live = np.abs(coord) <= self.radius
        if live.any():
            phases = np.exp(-1j * np.outer(coord[live], self.omegas))
            vals[live] = phases @ self.coeffs
            dvals[live] = phases @ (self.coeffs * (-1j * self.omegas))
        return vals, dvals


class _TravelingPacket:
    """Right- or left-moving packet on a full-line chart."""

    def __init__(self, chart: ConformalChart, sector: str, omega_c: float,
                 sigma: float):
        self.chart = chart
        self.sector = sector
        self.map = chart.u_map if sector == "u" else chart.v_map
        if self.map.vfn is None or self.map.inverse_vfn is None:
            raise ValueError(
                f"chart '{chart.name}' lacks vectorized maps for mode work")
        self.core = _PacketCore(math.log(omega_c), sigma,
                                norm=1.0 / math.sqrt(4.0 * math.pi))

    def _base_coord(self, t, xs):
        return t - xs if self.sector == "u" else t + xs

    def evaluate(self, t: float, xs):
        """(values, d/dt values) on the surface t = const."""
        xs = np.asarray(xs, dtype=float)
        w = self._base_coord(t, xs)
        rng = self.map.range
        inside = (w > rng.lo) & (w < rng.hi)
        vals = np.zeros(xs.shape, dtype=complex)
        dts = np.zeros(xs.shape, dtype=complex)
        if inside.any():
            c = self.map.inverse_vfn(w[inside])
            v, dv = self.core.wave(c)
            vals[inside] = v
            # d/dt = (dc/dw) f'(c); dw/dt = 1 on constant-t surfaces
            dts[inside] = dv / self.map.vdfn(c)
        return vals, dts

    def support(self, t: float):
        r = self.core.support_radius()
        lo = float(self.map.vfn(np.array([-r]))[0])
        hi = float(self.map.vfn(np.array([r]))[0])
        if self.sector == "u":
            return (t - hi, t - lo)
        return (lo - t, hi - t)

    def substitution(self, t: float):
        if self.map.inverse_vfn is None:
            return None
        is_identity = abs(float(self.map.vfn(np.array([0.37]))[0]) - 0.37) < 1e-15
        if is_identity:
            return None
        r = self.core.radius

        if self.sector == "u":
            def x_of_s(s):
                return t - self.map.vfn(s)

            def dx_of_s(s):
                return -self.map.vdfn(s)

            def s_of_x(x):
                return float(self.map.inverse_vfn(np.array([t - x]))[0])
        else:
            def x_of_s(s):
                return self.map.vfn(s) - t

            def dx_of_s(s):
                return self.map.vdfn(s)

            def s_of_x(x):
                return float(self.map.inverse_vfn(np.array([t + x]))[0])
        return (x_of_s, dx_of_s, s_of_x, (-r, r))


class _StandingPacket:
    """Dirichlet packet vanishing on the chart's x* = 0 boundary."""

    def __init__(self, chart: ConformalChart, omega_c: float, sigma: float):
        self.chart = chart
        for m in (chart.u_map, chart.v_map):
            if m.vfn is None or m.inverse_vfn is None:
                raise ValueError(
                    f"chart '{chart.name}' lacks vectorized maps")
        self.core = _PacketCore(math.log(omega_c), sigma,
                                norm=1.0 / math.sqrt(math.pi))

    def evaluate(self, t: float, xs):
        xs = np.asarray(xs, dtype=float)
        u = t - xs
        v = t + xs
        ur, vr = self.chart.u_map.range, self.chart.v_map.range
        inside = (u > ur.lo) & (u < ur.hi) & (v > vr.lo) & (v < vr.hi)
        vals = np.zeros(xs.shape, dtype=complex)
        dts = np.zeros(xs.shape, dtype=complex)
        if inside.any():
            cu = self.chart.u_map.inverse_vfn(u[inside])
            cv = self.chart.v_map.inverse_vfn(v[inside])
            right = cv > cu  # the state lives on the mirror's right, x* > 0
            cu, cv = cu[right], cv[right]
            live = np.zeros(xs.shape, bool)
            live[inside] = right
            fu, dfu = self.core.wave(cu)
            fv, dfv = self.core.wave(cv)
            # mode = (e^{-i w u*} - e^{-i w v*}) / 2i per frequency node
            vals[live] = (fu - fv) / 2j
            dts[live] = (dfu / self.chart.u_map.vdfn(cu)
                         - dfv / self.chart.v_map.vdfn(cv)) / 2j
        return vals, dts

    def _mirror_position(self, t: float) -> float:
        """x with x*(t, x) = 0, by bisection on cv - cu."""
        ur, vr = self.chart.u_map.range, self.chart.v_map.range
        lo = (vr.lo - t if math.isfinite(vr.lo) else t - ur.hi)
        hi = (t - ur.lo if math.isfinite(ur.lo) else vr.hi - t)
        if not math.isfinite(lo) or not math.isfinite(hi):
            raise ValueError("standing packets need a bounded surface slice")
        width = hi - lo

        def xhat(x):
            cu = float(self.chart.u_map.inverse_vfn(np.array([t - x]))[0])
            cv = float(self.chart.v_map.inverse_vfn(np.array([t + x]))[0])
            return cv - cu

        a, b = lo + 1e-12 * width, hi - 1e-12 * width
        for _ in range(200):
            mid = 0.5 * (a + b)
            if xhat(mid) < 0.0:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    def support(self, t: float):
        r = self.core.support_radius()
        u_lo = float(self.chart.u_map.vfn(np.array([-r]))[0])
        u_hi = float(self.chart.u_map.vfn(np.array([r]))[0])
        v_lo = float(self.chart.v_map.vfn(np.array([-r]))[0])
        v_hi = float(self.chart.v_map.vfn(np.array([r]))[0])
        lo = min(t - u_hi, v_lo - t)
        hi = max(t - u_lo, v_hi - t)
        ur, vr = self.chart.u_map.range, self.chart.v_map.range
        if math.isfinite(ur.lo):
            hi = min(hi, t - ur.lo)
        if math.isfinite(vr.lo):
            lo = max(lo, vr.lo - t)
        return (max(lo, self._mirror_position(t)), hi)

    def substitution(self, t: float):
        """The u-side chart coordinate: the only phase pile-up inside the
        mirror's side sits at the u-coverage edge, which this makes
        linear; the v-side rate stays bounded there."""
        m = self.chart.u_map
        r = self.core.radius

        def x_of_s(s):
            return t - m.vfn(s)

        def dx_of_s(s):
            return -m.vdfn(s)

        def s_of_x(x):
            return float(m.inverse_vfn(np.array([t - x]))[0])

        s_hi = s_of_x(self._mirror_position(t))
        return (x_of_s, dx_of_s, s_of_x, (-r, s_hi))


class _Conjugate:
    """Complex conjugate of a packet (negative-norm partner)."""

    def __init__(self, mode):
        self._mode = mode

    def evaluate(self, t, xs):
        v, d = self._mode.evaluate(t, xs)
        return np.conj(v), np.conj(d)

    def support(self, t):
        return self._mode.support(t)

    def substitution(self, t):
        return self._mode.substitution(t)


# ---------- Klein-Gordon pairing ----------

@dataclass(frozen=True)
class QuadReport:
    value: complex
    error: float
    truncation: float
    truncation_warning: bool
    n_evaluations: int


def kg_inner_product(mode1, mode2, t: float = 0.0, tol: float = 1e-8,
                     window: Optional[tuple] = None, substitution=None,
                     full_output: bool = False):
    """i Int (m1* d_t m2 - d_t m1* m2) dx over a t = const base surface.

    The window defaults to the intersection of the packet supports; the
    substitution to whichever mode prefers a non-linear one.
    """
    s1, s2 = mode1.support(t), mode2.support(t)
    if window is None:
        window = (max(s1[0], s2[0]), min(s1[1], s2[1]))
    if not window[0] < window[1]:
        result = QuadReport(0.0 + 0.0j, 0.0, 0.0, False, 0)
        return result if full_output else result.value
    if substitution is None:
        substitution = mode2.substitution(t) or mode1.substitution(t)

    def integrand_x(xs):
        v1, d1 = mode1.evaluate(t, xs)
        v2, d2 = mode2.evaluate(t, xs)
        return 1j * (np.conj(v1) * d2 - np.conj(d1) * v2)

    if substitution is None:
        a, b = window

        def integrand(ss):
            return integrand_x(ss)
    else:
        x_of_s, dx_of_s, s_of_x = substitution[:3]
        s_win = substitution[3] if len(substitution) > 3 else (-math.inf,
                                                               math.inf)
        probe = 0.5 * (max(s_win[0], -1.0) + min(s_win[1], 1.0))
        increasing = float(np.asarray(dx_of_s(np.asarray([probe])))[0]) > 0.0

        def to_s(x, fallback):
            # window edges can sit at (or float-collapse onto) the
            # substitution's reachable limit; those map to the window of
            # the substitution itself
            with np.errstate(all="ignore"):
                try:
                    s = s_of_x(x)
                except (ValueError, OverflowError, ZeroDivisionError):
                    return fallback
            return s if math.isfinite(s) else fallback

        if increasing:
            img = (to_s(window[0], -math.inf), to_s(window[1], math.inf))
        else:
            img = (to_s(window[1], -math.inf), to_s(window[0], math.inf))
        a = max(s_win[0], img[0])
        b = min(s_win[1], img[1])
        if not a < b:
            result = QuadReport(0.0 + 0.0j, 0.0, 0.0, False, 0)
            return result if full_output else result.value
        flip = 1.0 if increasing else -1.0

        def integrand(ss):
            return flip * integrand_x(x_of_s(ss)) * dx_of_s(ss)

    value, err, n = _adaptive_gk(integrand, a, b, tol)
    edge = np.abs(integrand(np.array([a, b])))
    trunc = float((edge[0] + edge[1]) * max(1.0, 0.05 * (b - a)))
    report = QuadReport(value, err, trunc, trunc > tol, n)
    return report if full_output else report.value


# ---------- coefficient matrices ----------

@dataclass(frozen=True)
class BogolubovPair:
    """alpha/beta matrices, rows indexed by basis-B packets, columns by
    basis-A packets, plus per-entry quadrature metadata."""

    alpha: np.ndarray
    beta: np.ndarray
    quad_error: np.ndarray
    truncation: np.ndarray
    basis_a: ModeBasis
    basis_b: ModeBasis

    def row_discretization_error(self, i: int) -> float:
        """Estimated absolute error of sum_k (|alpha|^2 - |beta|^2) for
        row i: quadrature and truncation contributions, unresolved content
        at the column-grid edges, and the attenuation of column packets
        against the row's content phase (rate ~ the row frequency)."""
        a, b = np.abs(self.alpha[i]), np.abs(self.beta[i])
        eps = self.quad_error[i] + self.truncation[i]
        quad_part = float(np.sum(2.0 * (a + b) * eps + eps * eps))
        lam = np.log(self.basis_a.frequencies)
        dlam = float(np.mean(np.diff(lam))) if len(lam) > 1 else 1.0
        sigma_b = self.basis_b.packet_width
        omega_b = float(self.basis_b.frequencies[i])
        cells = max(1.0, 1.0 / (math.sqrt(2.0) * sigma_b * omega_b * dlam))
        edge = float((a[0] ** 2 + a[-1] ** 2 + b[0] ** 2 + b[-1] ** 2))
        mass = float(np.sum(a * a + b * b))
        sigma_a = self.basis_a.packet_width
        attenuation = 2.5 * sigma_a ** 2 * omega_b ** 2 * mass
        return quad_part + 4.0 * cells * edge + attenuation


def compute_coefficients(basis_a: ModeBasis, basis_b: ModeBasis,
                         t: float = 0.0, tol: float = 1e-8) -> BogolubovPair:
    """alpha[i, k] = (f_k, g_i),  beta[i, k] = -(f_k*, g_i)."""
    packets_a = basis_a.packets()
    packets_b = basis_b.packets()
    nb, na = len(packets_b), len(packets_a)
    alpha = np.zeros((nb, na), dtype=complex)
    beta = np.zeros((nb, na), dtype=complex)
    qerr = np.zeros((nb, na))
    trunc = np.zeros((nb, na))
    for i, g in enumerate(packets_b):
        for k, f in enumerate(packets_a):
            ra = kg_inner_product(f, g, t=t, tol=tol, full_output=True)
            rb = kg_inner_product(_Conjugate(f), g, t=t, tol=tol,
                                  full_output=True)
            alpha[i, k] = ra.value
            beta[i, k] = -rb.value
            qerr[i, k] = ra.error + rb.error
            trunc[i, k] = ra.truncation + rb.truncation
    return BogolubovPair(alpha, beta, qerr, trunc, basis_a, basis_b)


def expected_number(pair: BogolubovPair, i: int) -> float:
    """Occupation of packet i of basis B in the basis-A vacuum."""
    return float(np.sum(np.abs(pair.beta[i]) ** 2))


def row_normalization(pair: BogolubovPair, i: int) -> float:
    return float(np.sum(np.abs(pair.alpha[i]) ** 2
                        - np.abs(pair.beta[i]) ** 2))
