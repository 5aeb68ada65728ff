"""Renormalized stress-energy of chart vacua.

For the vacuum built on a conformally flat chart with factor C, the null
components are

    T_11 = (1/24 pi) F_1(C),   T_22 = (1/24 pi) F_2(C),
    T_12 = -(1/48 pi) R g_12 = (1/24 pi) d2(ln C)/dc1 dc2,

with F_x(f) = f''/f - (3/2)(f'/f)^2, all derivatives taken along one null
direction at a time.  Everything is evaluated through jets, and every
evaluator accepts jet-valued coordinates, which is how the conservation
residuals differentiate straight through the full pipeline (including
chart transforms and numeric inversions).

Half-line (Dirichlet) vacua describe a state prepared as some ambient
chart vacuum and then stirred by a perfectly reflecting mirror: right-
movers that have bounced off the mirror are governed by the mirror-adapted
chart, right-movers that never meet it keep the ambient value, and the
boundary ray between the sectors is excluded.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .charts import (
    ChartMap,
    ConformalChart,
    CoverageError,
    Interval,
    Point,
    compose_maps,
    convert_point,
    get_chart,
)
from .jets import Jet1, Jet3, lead_value, seed

__all__ = [
    "INV_24PI",
    "INV_48PI",
    "StateError",
    "StateRegionError",
    "SingularRayError",
    "MarginError",
    "VacuumSpec",
    "StressSample",
    "OrthonormalStress",
    "ConservationReport",
    "F_functional",
    "F_of_jet",
    "schwarzian_derivative",
    "F_composition",
    "theta_components",
    "transform_stress",
    "expectation_stress",
    "to_orthonormal_frame",
    "check_conservation",
    "anomaly_check",
    "stress_component_functions",
]

# single shared source for all physical constants
_PI = math.pi
INV_24PI = 1.0 / (24.0 * _PI)
INV_48PI = 1.0 / (48.0 * _PI)

_QUANTIZABLE = ("full_plane", "half_line")


class StateError(ValueError):
    """The chart does not support the requested vacuum construction."""


class StateRegionError(ValueError):
    """The point is outside the region where the state is defined."""


class SingularRayError(ValueError):
    """Evaluation on a ray where the state's stress is singular."""


class MarginError(ValueError):
    """A grid region comes too close to a singular ray."""


@dataclass(frozen=True, eq=False)
class VacuumSpec:
    """A vacuum state tied to a chart.

    ``boundary`` is 'full_line' for an unbounded chart vacuum or
    'dirichlet_half_line' for a mirror state; the latter carries the
    ambient vacuum used for never-reflected right-movers, the base-u
    interval governed by the mirror chart, and the predicate selecting
    the mirror's side.
    """

    chart: ConformalChart
    boundary: str = "full_line"
    label: str = "vacuum"
    ambient_chart: Optional[ConformalChart] = None
    reflected_u_range: Optional[Interval] = None
    region_predicate: Optional[Callable[[float, float], bool]] = None

    def __post_init__(self):
        if self.boundary not in ("full_line", "dirichlet_half_line"):
            raise StateError(f"unknown boundary kind {self.boundary!r}")
        if self.chart.global_class not in _QUANTIZABLE:
            raise StateError(
                f"chart '{self.chart.name}' (class {self.chart.global_class}) "
                f"does not admit the standard vacuum construction")
        if self.boundary == "dirichlet_half_line" \
                and self.chart.global_class != "half_line":
            raise StateError(
                "half-line vacua require a mirror-adapted (half_line) chart")


@dataclass(frozen=True)
class StressSample:
    """Null stress components at a point, in a chart, for a state."""

    t_uu: float
    t_vv: float
    t_uv: float
    chart: str
    state: str
    point: Point


@dataclass(frozen=True)
class OrthonormalStress:
    energy_density: float
    pressure: float
    flux: float


@dataclass(frozen=True)
class ConservationReport:
    max_residual: float
    max_residual_u_equation: float
    max_residual_v_equation: float
    n: int
    region: tuple


# ---------- the F functional ----------

def F_of_jet(j: Jet3):
    """F of the function whose jet this is: f''/f - (3/2)(f'/f)^2."""
    if lead_value(j.value) == 0.0:
        raise SingularRayError("F functional: zero denominator")
    r1 = j.d1 / j.value
    return j.d2 / j.value - 1.5 * (r1 * r1)


def F_functional(f, x: float) -> float:
    """F_x(f) for a jet-evaluable function f."""
    j = f(seed(x))
    if lead_value(j.value) == 0.0:
        raise SingularRayError(f"F functional: f({x}) = 0")
    return lead_value(F_of_jet(j))


def schwarzian_derivative(m, x: float) -> float:
    """F applied to the derivative of m: m'''/m' - (3/2)(m''/m')^2.

    Vanishes identically for Moebius maps.
    """
    j = m(seed(x)) if isinstance(m, ChartMap) else m(seed(x))
    if lead_value(j.d1) == 0.0:
        raise SingularRayError(f"schwarzian: m'({x}) = 0")
    r = j.d2 / j.d1
    return lead_value(j.d3 / j.d1 - 1.5 * (r * r))


def F_composition(p_map: ChartMap, base_F: float, x_bar: float) -> float:
    """F in the relabeled chart from F in the original one:
    (1/p'(x)^2) [base_F - F_x(p')], the subtracted term being the
    Schwarzian derivative of p."""
    j = p_map(seed(x_bar))
    pprime = lead_value(j.d1)
    if pprime == 0.0:
        raise SingularRayError(f"F composition: p'({x_bar}) = 0")
    r = j.d2 / j.d1
    schw = lead_value(j.d3 / j.d1 - 1.5 * (r * r))
    return (base_F - schw) / (pprime * pprime)


# ---------- stress of a chart vacuum, jet-generic ----------

def _lift(x):
    """Wrap a coordinate as a constant of the next (innermost) jet level."""
    return Jet3(x, 0.0, 0.0, 0.0)


def _theta_F(chart: ConformalChart, cu, cv, direction: str):
    """F of the conformal factor along one null direction; the other
    coordinate (and any jet structure both carry) rides along as
    coefficients."""
    if direction == "u":
        a1, a2 = Jet3(cu, 1.0, 0.0, 0.0), _lift(cv)
    else:
        a1, a2 = _lift(cu), Jet3(cv, 1.0, 0.0, 0.0)
    return F_of_jet(chart.factor(a1, a2))


def _mixed_log_derivative(chart: ConformalChart, cu, cv):
    """d2(ln C)/dc1 dc2 with two nested first-order seeds."""
    from .jets import jlog
    a1 = Jet1(Jet1(cu, 1.0), 0.0)
    a2 = Jet1(Jet1(cv, 0.0), 1.0)
    return jlog(chart.factor(a1, a2)).d1.d1


def stress_component_functions(state: VacuumSpec, observe_chart):
    """(t11, t22, t12, factor) as jet-generic functions of observe-chart
    null coordinates.

    The callables assume their arguments already lie in the state's
    region; :func:`expectation_stress` performs the per-point checks.
    """
    observe = get_chart(observe_chart)
    return _build_components(state, observe)


@functools.lru_cache(maxsize=64)
def _transition_map(state_chart: ConformalChart, observe: ConformalChart,
                    side: str) -> ChartMap:
    """State-chart null coordinate as a function of the observe one."""
    s_map = state_chart.u_map if side == "u" else state_chart.v_map
    o_map = observe.u_map if side == "u" else observe.v_map
    if state_chart.name == observe.name:
        from .charts import identity_map
        return identity_map(f"{side}-id")
    return compose_maps(s_map.inverse_map(), o_map,
                        label=f"{state_chart.name}.{side}({observe.name})")


def _sector_component(gov: ConformalChart, observe: ConformalChart,
                      side: str):
    """T_11 (or T_22) of the ``gov``-chart vacuum, expressed in observe
    coordinates, as a jet-generic function of (c1, c2)."""
    m_own = _transition_map(gov, observe, side)
    m_other = _transition_map(gov, observe, "v" if side == "u" else "u")

    def component(c1, c2):
        own, other = (c1, c2) if side == "u" else (c2, c1)
        xi = m_own(own)
        eta = m_other(other)
        jac = m_own.dfn(own)
        if side == "u":
            f = _theta_F(gov, xi, eta, "u")
        else:
            f = _theta_F(gov, eta, xi, "v")
        return INV_24PI * ((jac * jac) * f)

    return component


def _sector_cross(gov: ConformalChart, observe: ConformalChart):
    m_u = _transition_map(gov, observe, "u")
    m_v = _transition_map(gov, observe, "v")

    def cross(c1, c2):
        xi, eta = m_u(c1), m_v(c2)
        jac = m_u.dfn(c1) * m_v.dfn(c2)
        return INV_24PI * (jac * _mixed_log_derivative(gov, xi, eta))

    return cross


def _build_components(state: VacuumSpec, observe: ConformalChart):
    if state.boundary == "full_line":
        gov = state.chart
        return (_sector_component(gov, observe, "u"),
                _sector_component(gov, observe, "v"),
                _sector_cross(gov, observe),
                observe.factor)

    # Dirichlet state: right-movers split into reflected / not-yet-reflected
    mirror = state.chart
    ambient = state.ambient_chart
    refl = state.reflected_u_range

    def pick_sector(c1) -> ConformalChart:
        u = lead_value(observe.u_map(c1))
        if refl is not None and refl.contains(u):
            return mirror
        if refl is not None and (u == refl.lo or u == refl.hi):
            raise SingularRayError(
                f"sector boundary ray u={u} is excluded (half-open sectors)")
        if ambient is not None and ambient.u_map.range.contains(u):
            return ambient
        raise CoverageError(f"base u={u} outside the state's coverage")

    # left-movers keep their labels (identity relabeling), so the mirror
    # and ambient charts assign the same T_22; dispatching every component
    # on the u-sector keeps all evaluations inside chart coverage
    per_gov = {}
    for gov in filter(None, (mirror, ambient)):
        per_gov[gov.name] = (_sector_component(gov, observe, "u"),
                             _sector_component(gov, observe, "v"),
                             _sector_cross(gov, observe))

    def t11(c1, c2):
        return per_gov[pick_sector(c1).name][0](c1, c2)

    def t22(c1, c2):
        return per_gov[pick_sector(c1).name][1](c1, c2)

    def t12(c1, c2):
        return per_gov[pick_sector(c1).name][2](c1, c2)

    return t11, t22, t12, observe.factor


# ---------- public operations ----------

def theta_components(state: VacuumSpec, p: Point) -> StressSample:
    """Null stress of the state's own chart vacuum at a point of that
    chart (no sector logic, no transform)."""
    chart = state.chart
    q = p if p.chart == chart.name else convert_point(p, chart)
    t11 = INV_24PI * lead_value(_theta_F(chart, q.c1, q.c2, "u"))
    t22 = INV_24PI * lead_value(_theta_F(chart, q.c1, q.c2, "v"))
    t12 = INV_24PI * lead_value(_mixed_log_derivative(chart, q.c1, q.c2))
    return StressSample(t11, t22, t12, chart.name, state.label, q)


def transform_stress(s: StressSample, to_chart) -> StressSample:
    """Rank-2 tensor transformation of the null components."""
    target = get_chart(to_chart)
    if target.name == s.chart:
        return s
    src = get_chart(s.chart)
    q = convert_point(s.point, target)
    du_s = src.u_map.deriv(s.point.c1)
    dv_s = src.v_map.deriv(s.point.c2)
    du_t = target.u_map.deriv(q.c1)
    dv_t = target.v_map.deriv(q.c2)
    ru, rv = du_t / du_s, dv_t / dv_s
    return StressSample(s.t_uu * ru * ru, s.t_vv * rv * rv,
                        s.t_uv * ru * rv, target.name, s.state, q)


def expectation_stress(state: VacuumSpec, observe_chart, p: Point
                       ) -> StressSample:
    """Renormalized stress of the state, expressed in the observation
    chart, with mirror-sector stitching where applicable."""
    observe = get_chart(observe_chart)
    q = p if p.chart == observe.name else convert_point(p, observe)
    u, v = observe.to_base(q.c1, q.c2)
    if state.boundary == "dirichlet_half_line":
        if state.region_predicate is not None \
                and not state.region_predicate(u, v):
            raise StateRegionError(
                f"point (u={u}, v={v}) lies on the wrong side of the mirror "
                f"for state '{state.label}'")
        if not state.chart.v_map.range.contains(v):
            raise CoverageError(
                f"base v={v} outside state coverage {state.chart.v_map.range}")
    else:
        if not state.chart.contains_base(u, v):
            raise CoverageError(
                f"point (u={u}, v={v}) outside coverage of state chart "
                f"'{state.chart.name}'")
    t11f, t22f, t12f, _ = _build_components(state, observe)
    t11 = lead_value(t11f(q.c1, q.c2))
    t22 = lead_value(t22f(q.c1, q.c2))
    t12 = lead_value(t12f(q.c1, q.c2))
    return StressSample(t11, t22, t12, observe.name, state.label, q)


def to_orthonormal_frame(s: StressSample) -> OrthonormalStress:
    """Mixed components in the frame aligned with the sample's chart:
    energy density T^t_t, pressure T^x_x, flux T^t_x."""
    chart = get_chart(s.chart)
    c = chart.conformal_factor(s.point.c1, s.point.c2)
    return OrthonormalStress(
        energy_density=(s.t_uu + 2.0 * s.t_uv + s.t_vv) / c,
        pressure=-(s.t_uu - 2.0 * s.t_uv + s.t_vv) / c,
        flux=(s.t_vv - s.t_uu) / c,
    )


def anomaly_check(state: VacuumSpec, p: Point) -> float:
    """|(4/C) T_12 + R/(24 pi)| at a point of the state's chart."""
    chart = state.chart
    q = p if p.chart == chart.name else convert_point(p, chart)
    t12 = INV_24PI * lead_value(_mixed_log_derivative(chart, q.c1, q.c2))
    c = chart.conformal_factor(q.c1, q.c2)
    r = chart.ricci_scalar(q.c1, q.c2)
    return abs(4.0 / c * t12 + r / (24.0 * _PI))


# ---------- conservation ----------

def _singular_rays(state: VacuumSpec, observe: ConformalChart):
    """Observe-chart coordinate values of rays where the state's stress
    (or the chart itself) is singular."""
    rays_u, rays_v = [], []

    def add(rays, own_map, base_value):
        if math.isfinite(base_value) and own_map.range.contains(base_value):
            rays.append(own_map.invert(base_value))

    if state.boundary == "full_line":
        for end in (state.chart.u_map.range.lo, state.chart.u_map.range.hi):
            add(rays_u, observe.u_map, end)
        for end in (state.chart.v_map.range.lo, state.chart.v_map.range.hi):
            add(rays_v, observe.v_map, end)
    else:
        # the u-direction is singular only on the sector boundary; the
        # v-direction on the mirror chart's coverage edge
        if state.reflected_u_range is not None:
            for end in (state.reflected_u_range.lo,
                        state.reflected_u_range.hi):
                add(rays_u, observe.u_map, end)
        for end in (state.chart.v_map.range.lo, state.chart.v_map.range.hi):
            add(rays_v, observe.v_map, end)
    for dom, rays in ((observe.u_map.domain, rays_u),
                      (observe.v_map.domain, rays_v)):
        rays.extend(e for e in (dom.lo, dom.hi) if math.isfinite(e))
    return rays_u, rays_v


def check_conservation(state: VacuumSpec, observe_chart, region, n: int,
                       margin: float = 1e-3) -> ConservationReport:
    """Max residual of the null conservation equations on an n-by-n grid.

    Residuals are |d1 T_22 + d2 T_12 + (d2 C / C) T_12| and the mirror
    image with 1 <-> 2, every derivative taken by nesting jets through the
    full evaluation pipeline.
    """
    observe = get_chart(observe_chart)
    c1_lo, c1_hi, c2_lo, c2_hi = region
    rays_u, rays_v = _singular_rays(state, observe)
    for ray in rays_u:
        if c1_lo - margin < ray < c1_hi + margin:
            raise MarginError(
                f"region touches singular ray c1={ray} (margin {margin})")
    for ray in rays_v:
        if c2_lo - margin < ray < c2_hi + margin:
            raise MarginError(
                f"region touches singular ray c2={ray} (margin {margin})")
    t11f, t22f, t12f, cf = _build_components(state, observe)
    max_u = max_v = 0.0
    for i in range(n):
        x = c1_lo + (c1_hi - c1_lo) * (i / (n - 1) if n > 1 else 0.5)
        for j in range(n):
            y = c2_lo + (c2_hi - c2_lo) * (j / (n - 1) if n > 1 else 0.5)
            a1 = Jet1(Jet1(x, 1.0), 0.0)   # inner jet in c1
            a2 = Jet1(Jet1(y, 0.0), 1.0)   # outer jet in c2
            t11 = t11f(a1, a2)
            t22 = t22f(a1, a2)
            t12 = t12f(a1, a2)
            c = cf(a1, a2)
            c00 = c.value.value
            t12_00 = t12.value.value
            res_v = abs(t22.value.d1 + t12.d1.value
                        + c.d1.value / c00 * t12_00)
            res_u = abs(t11.d1.value + t12.value.d1
                        + c.value.d1 / c00 * t12_00)
            max_v = max(max_v, res_v)
            max_u = max(max_u, res_u)
    return ConservationReport(max(max_u, max_v), max_u, max_v, n, tuple(region))
