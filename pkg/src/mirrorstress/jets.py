"""Order-3 forward-mode jets.

A :class:`Jet3` bundles a value with its first three derivatives with
respect to one designated coordinate.  All derivative-hungry quantities in
this package (conformal factors, stress components, Ricci scalars,
conservation residuals) are evaluated through jet arithmetic, so every
derivative is an exact chain-rule evaluation rather than a finite
difference.

Coefficients of a jet may themselves be jets.  Nesting a jet in one null
direction inside a jet in the other is how mixed partial derivatives such
as d2(ln C)/du dv are taken; no two-dimensional jet type is needed.
"""

from __future__ import annotations

import math

__all__ = [
    "Jet3",
    "Jet1",
    "JetDomainError",
    "seed",
    "constant",
    "compose",
    "arith",
    "elementary",
    "jexp",
    "jlog",
    "jsinh",
    "jcosh",
    "jtanh",
    "jatanh",
    "jsqrt",
    "jpow",
    "lead_value",
]

_SCALARS = (int, float)


class JetDomainError(ValueError):
    """Raised when an operation leaves the real domain of a function."""

    def __init__(self, fn: str, value: float):
        self.fn = fn
        self.value = value
        super().__init__(f"{fn} undefined at value {value!r}")


def lead_value(x):
    """Innermost float of a possibly nested jet (the evaluation point)."""
    while isinstance(x, (Jet3, Jet1)):
        x = x.value
    return x


class Jet1:
    """First-order jet: value and one derivative.

    Used for the outer levels of nested differentiation where only a
    single derivative per direction is needed (conservation residuals,
    mixed log-derivatives); four times leaner than nesting full Jet3s.
    """

    __slots__ = ("value", "d1")

    def __init__(self, value, d1=0.0):
        self.value = value
        self.d1 = d1

    def __repr__(self):
        return f"Jet1({self.value!r}, {self.d1!r})"

    def __add__(self, other):
        if isinstance(other, Jet1):
            return Jet1(self.value + other.value, self.d1 + other.d1)
        if isinstance(other, _SCALARS):
            return Jet1(self.value + other, self.d1)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet1):
            return Jet1(self.value - other.value, self.d1 - other.d1)
        if isinstance(other, _SCALARS):
            return Jet1(self.value - other, self.d1)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALARS):
            return Jet1(other - self.value, -self.d1)
        return NotImplemented

    def __neg__(self):
        return Jet1(-self.value, -self.d1)

    def __mul__(self, other):
        if isinstance(other, Jet1):
            return Jet1(self.value * other.value,
                        self.d1 * other.value + self.value * other.d1)
        if isinstance(other, _SCALARS):
            return Jet1(self.value * other, self.d1 * other)
        return NotImplemented

    __rmul__ = __mul__

    def _reciprocal(self):
        if lead_value(self.value) == 0.0:
            raise JetDomainError("div", lead_value(self.value))
        r = 1.0 / self.value
        return Jet1(r, -(self.d1 * (r * r)))

    def __truediv__(self, other):
        if isinstance(other, Jet1):
            return self * other._reciprocal()
        if isinstance(other, _SCALARS):
            if other == 0:
                raise JetDomainError("div", 0.0)
            return self * (1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            return other * self._reciprocal()
        return NotImplemented

    def __pow__(self, p):
        if isinstance(p, int):
            if p == 0:
                return 0.0 * self + 1.0
            if p < 0:
                return (self ** (-p))._reciprocal()
            out = self
            for _ in range(p - 1):
                out = out * self
            return out
        if isinstance(p, float):
            return jpow(self, p)
        return NotImplemented


class Jet3:
    """Value plus derivatives d1, d2, d3 with respect to one coordinate.

    Arithmetic follows the exact Leibniz/chain rules to order 3.  Mixing
    with plain numbers treats them as constants; mixing with jets whose
    coefficients are themselves jets realizes nested differentiation.
    """

    __slots__ = ("value", "d1", "d2", "d3")

    def __init__(self, value, d1=0.0, d2=0.0, d3=0.0):
        self.value = value
        self.d1 = d1
        self.d2 = d2
        self.d3 = d3

    def as_tuple(self):
        return (self.value, self.d1, self.d2, self.d3)

    def __repr__(self):
        return f"Jet3({self.value!r}, {self.d1!r}, {self.d2!r}, {self.d3!r})"

    # ---------- ring operations ----------

    def __add__(self, other):
        if isinstance(other, Jet3):
            return Jet3(self.value + other.value, self.d1 + other.d1,
                        self.d2 + other.d2, self.d3 + other.d3)
        if isinstance(other, _SCALARS):
            return Jet3(self.value + other, self.d1, self.d2, self.d3)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet3):
            return Jet3(self.value - other.value, self.d1 - other.d1,
                        self.d2 - other.d2, self.d3 - other.d3)
        if isinstance(other, _SCALARS):
            return Jet3(self.value - other, self.d1, self.d2, self.d3)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALARS):
            return Jet3(other - self.value, -self.d1, -self.d2, -self.d3)
        return NotImplemented

    def __neg__(self):
        return Jet3(-self.value, -self.d1, -self.d2, -self.d3)

    def __mul__(self, other):
        if isinstance(other, Jet3):
            return Jet3(
                self.value * other.value,
                self.d1 * other.value + self.value * other.d1,
                self.d2 * other.value + 2.0 * (self.d1 * other.d1)
                + self.value * other.d2,
                self.d3 * other.value + 3.0 * (self.d2 * other.d1)
                + 3.0 * (self.d1 * other.d2) + self.value * other.d3,
            )
        if isinstance(other, _SCALARS):
            return Jet3(self.value * other, self.d1 * other,
                        self.d2 * other, self.d3 * other)
        return NotImplemented

    __rmul__ = __mul__

    def _reciprocal(self):
        if lead_value(self.value) == 0.0:
            raise JetDomainError("div", lead_value(self.value))
        r = 1.0 / self.value  # recurses through __rtruediv__ when nested
        r2 = r * r
        return compose((r, -r2, 2.0 * (r2 * r), -6.0 * (r2 * r2)), self)

    def __truediv__(self, other):
        if isinstance(other, Jet3):
            return self * other._reciprocal()
        if isinstance(other, _SCALARS):
            if other == 0:
                raise JetDomainError("div", 0.0)
            return self * (1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            return other * self._reciprocal()
        return NotImplemented

    def __pow__(self, p):
        if isinstance(p, int):
            if p == 0:
                return 0.0 * self + 1.0
            if p < 0:
                return (self ** (-p))._reciprocal()
            out = self
            for _ in range(p - 1):
                out = out * self
            return out
        if isinstance(p, float):
            return jpow(self, p)
        return NotImplemented


def seed(x) -> Jet3:
    """Jet of the identity coordinate at x: (x, 1, 0, 0)."""
    return Jet3(x, 1.0, 0.0, 0.0)


def constant(x) -> Jet3:
    """Jet of a constant: all derivatives zero."""
    return Jet3(x, 0.0, 0.0, 0.0)


def compose(outer_tower, inner: Jet3) -> Jet3:
    """Faa di Bruno to order 3.

    ``outer_tower`` holds (f, f', f'', f''') evaluated at ``inner.value``;
    the result is the jet of the composition f(inner).
    """
    t0, t1, t2, t3 = outer_tower
    g1, g2, g3 = inner.d1, inner.d2, inner.d3
    g1sq = g1 * g1
    return Jet3(
        t0,
        t1 * g1,
        t1 * g2 + t2 * g1sq,
        t1 * g3 + 3.0 * (t2 * (g1 * g2)) + t3 * (g1sq * g1),
    )


# ---------- elementary functions ----------
# Each accepts a float or a (possibly nested) Jet3.  Towers are computed
# recursively on the jet's value, so nesting costs nothing extra in code.

def jexp(x):
    if isinstance(x, Jet3):
        e = jexp(x.value)
        return compose((e, e, e, e), x)
    if isinstance(x, Jet1):
        e = jexp(x.value)
        return Jet1(e, e * x.d1)
    return math.exp(x)


def jlog(x):
    if isinstance(x, Jet3):
        if lead_value(x.value) <= 0.0:
            raise JetDomainError("log", lead_value(x.value))
        r = 1.0 / x.value
        return compose((jlog(x.value), r, -(r * r), 2.0 * (r * r * r)), x)
    if isinstance(x, Jet1):
        if lead_value(x.value) <= 0.0:
            raise JetDomainError("log", lead_value(x.value))
        return Jet1(jlog(x.value), x.d1 / x.value)
    if x <= 0.0:
        raise JetDomainError("log", x)
    return math.log(x)


def jsqrt(x):
    if isinstance(x, Jet3):
        if lead_value(x.value) <= 0.0:
            raise JetDomainError("sqrt", lead_value(x.value))
        s = jsqrt(x.value)
        inv = 1.0 / s
        inv3 = inv * inv * inv
        return compose((s, 0.5 * inv, -0.25 * inv3,
                        0.375 * (inv3 * (inv * inv))), x)
    if isinstance(x, Jet1):
        if lead_value(x.value) <= 0.0:
            raise JetDomainError("sqrt", lead_value(x.value))
        s = jsqrt(x.value)
        return Jet1(s, 0.5 * (x.d1 / s))
    if x <= 0.0:
        raise JetDomainError("sqrt", x)
    return math.sqrt(x)


def jsinh(x):
    if isinstance(x, Jet3):
        s = jsinh(x.value)
        c = jcosh(x.value)
        return compose((s, c, s, c), x)
    if isinstance(x, Jet1):
        return Jet1(jsinh(x.value), jcosh(x.value) * x.d1)
    return math.sinh(x)


def jcosh(x):
    if isinstance(x, Jet3):
        s = jsinh(x.value)
        c = jcosh(x.value)
        return compose((c, s, c, s), x)
    if isinstance(x, Jet1):
        return Jet1(jcosh(x.value), jsinh(x.value) * x.d1)
    return math.cosh(x)


def jtanh(x):
    if isinstance(x, Jet3):
        t = jtanh(x.value)
        sech2 = 1.0 - t * t
        return compose((t, sech2, -2.0 * (t * sech2),
                        sech2 * (6.0 * (t * t) - 2.0)), x)
    if isinstance(x, Jet1):
        t = jtanh(x.value)
        return Jet1(t, (1.0 - t * t) * x.d1)
    return math.tanh(x)


def jatanh(x):
    if isinstance(x, Jet3):
        v = lead_value(x.value)
        if abs(v) >= 1.0:
            raise JetDomainError("atanh", v)
        d = 1.0 - x.value * x.value
        r = 1.0 / d
        r2 = r * r
        return compose((jatanh(x.value), r, 2.0 * (x.value * r2),
                        (2.0 + 6.0 * (x.value * x.value)) * (r2 * r)), x)
    if isinstance(x, Jet1):
        v = lead_value(x.value)
        if abs(v) >= 1.0:
            raise JetDomainError("atanh", v)
        return Jet1(jatanh(x.value), x.d1 / (1.0 - x.value * x.value))
    if abs(x) >= 1.0:
        raise JetDomainError("atanh", x)
    return math.atanh(x)


def jpow(x, p: float):
    if isinstance(x, Jet3):
        if lead_value(x.value) <= 0.0:
            raise JetDomainError("pow", lead_value(x.value))
        v = jpow(x.value, p)
        r = 1.0 / x.value
        t1 = p * (v * r)
        t2 = (p - 1.0) * (t1 * r)
        t3 = (p - 2.0) * (t2 * r)
        return compose((v, t1, t2, t3), x)
    if isinstance(x, Jet1):
        if lead_value(x.value) <= 0.0:
            raise JetDomainError("pow", lead_value(x.value))
        v = jpow(x.value, p)
        return Jet1(v, p * (v * (x.d1 / x.value)))
    if x <= 0.0:
        raise JetDomainError("pow", x)
    return math.pow(x, p)


_ELEMENTARY = {
    "exp": jexp,
    "log": jlog,
    "sinh": jsinh,
    "cosh": jcosh,
    "tanh": jtanh,
    "atanh": jatanh,
    "sqrt": jsqrt,
}


def elementary(a, fn: str):
    """Apply a named elementary function ('pow' takes (name, exponent))."""
    if isinstance(fn, tuple) and fn[0] == "pow":
        return jpow(a, fn[1])
    try:
        f = _ELEMENTARY[fn]
    except KeyError:
        raise ValueError(f"unknown elementary function {fn!r}") from None
    return f(a)


def arith(a, b, op: str):
    """Named binary arithmetic, mostly for table-driven tests."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown arithmetic op {op!r}")
