"""Named, reproducible physical setups with closed-form references.

Each scenario bundles a vacuum state, an observation chart, the mirror
trajectory (when there is one) and its single physical parameter a > 0.
The closed forms registered here are regression oracles for the engine,
never part of the evaluation pipeline itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as _np

from .charts import (
    ChartMap,
    ConformalChart,
    Interval,
    Point,
    get_chart,
    identity_map,
    register_chart,
)
from .jets import jexp, jlog
from .trajectories import (
    Trajectory,
    stationary_mirror,
    uniformly_accelerated_mirror,
)
from .vacuum_stress import INV_48PI, StressSample, VacuumSpec

__all__ = [
    "OracleUnavailableError",
    "Scenario",
    "SCENARIO_NAMES",
    "scenario_parameter_schema",
    "build_scenario",
    "closed_form_reference",
    "hatted_chart_for_stationary_mirror",
    "hatted_chart_for_accelerated_mirror",
]

SCENARIO_NAMES = (
    "rindler_vacuum",
    "mirror_in_rindler_vacuum",
    "accelerated_mirror_minkowski",
    "minkowski_vacuum_rindler_observer",
)


class OracleUnavailableError(LookupError):
    """No closed form is registered for this scenario and chart."""


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    state: VacuumSpec
    observation_chart: ConformalChart
    trajectory: Optional[Trajectory]
    params: dict
    forms: dict = field(repr=False, default_factory=dict)


def scenario_parameter_schema() -> dict:
    """Parameter schema per scenario, for the CLI listing."""
    a_doc = {"a": "positive acceleration scale (mirror at z = 1/a); default 1"}
    return {
        "rindler_vacuum": {},
        "mirror_in_rindler_vacuum": a_doc,
        "accelerated_mirror_minkowski":
            {"a": "positive proper acceleration of the mirror; default 1"},
        "minkowski_vacuum_rindler_observer": {},
    }


# ---------- mirror-adapted charts ----------

def hatted_chart_for_stationary_mirror(a: float) -> ConformalChart:
    """Chart in which the mirror at z = 1/a sits at constant position.

    Base coordinates: u = exp(u*) - 2/a, v = exp(v*); the mirror worldline
    is u* = v*.  Restricted to the wedge this chart is the reflection-map
    relabeling of the wedge chart; as registered here it extends over the
    full strip u > -2/a, v > 0.
    """
    shift = 2.0 / a
    u_map = ChartMap(
        fn=lambda x: jexp(x) - shift,
        dfn=jexp,
        inverse_fn=lambda y: jlog(y + shift),
        monotone_sign=1,
        label=f"hatted-u[a={a:g}]",
        range_hint=Interval(-shift, math.inf),
        vfn=lambda arr: _np.exp(arr) - shift,
        vdfn=_np.exp,
        inverse_vfn=lambda arr: _np.log(arr + shift),
    )
    v_map = ChartMap(
        fn=jexp,
        dfn=jexp,
        inverse_fn=jlog,
        monotone_sign=1,
        label=f"hatted-v[a={a:g}]",
        range_hint=Interval(0.0, math.inf),
        vfn=_np.exp,
        vdfn=_np.exp,
        inverse_vfn=_np.log,
    )
    return ConformalChart(f"hatted:mirror_in_rindler_vacuum:a={a:g}",
                          u_map, v_map, global_class="half_line")


def hatted_chart_for_accelerated_mirror(a: float) -> ConformalChart:
    """Chart adapted to the hyperbolic mirror in flat base coordinates:
    u = -1/(a^2 u*), v = v*; the reflection relabeling is a Moebius map."""
    c = 1.0 / (a * a)
    u_map = ChartMap(
        fn=lambda x: -c / x,
        dfn=lambda x: c / (x * x),
        domain=Interval(0.0, math.inf),
        inverse_fn=lambda y: -c / y,
        monotone_sign=1,
        label=f"hatted-hyperbola-u[a={a:g}]",
        range_hint=Interval(-math.inf, 0.0),
        vfn=lambda arr: -c / arr,
        vdfn=lambda arr: c / (arr * arr),
        inverse_vfn=lambda arr: -c / arr,
    )
    return ConformalChart(f"hatted:accelerated_mirror_minkowski:a={a:g}",
                          u_map, identity_map("v"),
                          global_class="half_line")


# ---------- scenario builders ----------

def _require_positive_a(params: Optional[dict]) -> float:
    params = dict(params or {})
    a = params.pop("a", 1.0)
    if params:
        raise ValueError(f"unknown scenario parameters: {sorted(params)}")
    a = float(a)
    if not a > 0.0:
        raise ValueError(f"parameter a must be positive, got {a}")
    return a


def build_scenario(name: str, params: Optional[dict] = None) -> Scenario:
    if name == "rindler_vacuum":
        _require_positive_a(params if params else None)
        rind = get_chart("rindler")
        state = VacuumSpec(rind, "full_line", label="rindler_vacuum")
        forms = {
            "rindler": lambda c1, c2: (-INV_48PI, -INV_48PI, 0.0),
            "minkowski": lambda u, v: (-INV_48PI / (u * u),
                                       -INV_48PI / (v * v), 0.0),
        }
        return Scenario(name, state, rind, None, {}, forms)

    if name == "minkowski_vacuum_rindler_observer":
        _require_positive_a(params if params else None)
        mink = get_chart("minkowski")
        state = VacuumSpec(mink, "full_line", label="minkowski_vacuum")
        zero = lambda c1, c2: (0.0, 0.0, 0.0)
        forms = {"rindler": zero, "minkowski": zero}
        return Scenario(name, state, get_chart("rindler"), None, {}, forms)

    if name == "mirror_in_rindler_vacuum":
        a = _require_positive_a(params)
        rind = get_chart("rindler")
        hatted = register_chart(hatted_chart_for_stationary_mirror(a))
        shift = 2.0 / a
        state = VacuumSpec(
            hatted, "dirichlet_half_line",
            label="mirror_in_rindler_vacuum",
            ambient_chart=rind,
            reflected_u_range=Interval(-shift, math.inf),
            region_predicate=lambda u, v: v - u > shift,
        )
        log_edge = math.log(a / 2.0)

        def t11_rindler(c1, c2):
            if c1 > log_edge:
                w = a * math.exp(-c1)
                return -INV_48PI * w * w / (2.0 - w) ** 2
            return -INV_48PI

        def t11_minkowski(u, v):
            if u > -shift:
                return -INV_48PI * a * a / (2.0 + a * u) ** 2
            return -INV_48PI / (u * u)

        forms = {
            "rindler": lambda c1, c2: (t11_rindler(c1, c2), -INV_48PI, 0.0),
            "minkowski": lambda u, v: (t11_minkowski(u, v),
                                       -INV_48PI / (v * v), 0.0),
        }
        return Scenario(name, state, rind, stationary_mirror(1.0 / a),
                        {"a": a}, forms)

    if name == "accelerated_mirror_minkowski":
        a = _require_positive_a(params)
        mink = get_chart("minkowski")
        hatted = register_chart(hatted_chart_for_accelerated_mirror(a))
        c = 1.0 / (a * a)
        state = VacuumSpec(
            hatted, "dirichlet_half_line",
            label="accelerated_mirror_minkowski",
            ambient_chart=None,
            reflected_u_range=Interval(-math.inf, 0.0),
            region_predicate=lambda u, v: u < 0.0 and u * v < -c,
        )
        zero = lambda c1, c2: (0.0, 0.0, 0.0)
        forms = {"minkowski": zero}
        return Scenario(name, state, mink,
                        uniformly_accelerated_mirror(a), {"a": a}, forms)

    raise ValueError(
        f"unknown scenario {name!r}; available: {', '.join(SCENARIO_NAMES)}")


def closed_form_reference(s: Scenario, p: Point) -> StressSample:
    """The registered analytic value at a point, as a regression oracle."""
    form = s.forms.get(p.chart)
    if form is None:
        raise OracleUnavailableError(
            f"scenario '{s.name}' has no closed form in chart '{p.chart}'")
    t11, t22, t12 = form(p.c1, p.c2)
    return StressSample(t11, t22, t12, p.chart, s.state.label, p)
