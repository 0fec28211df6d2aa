"""Truncated exponential generating functions over Laurent coefficients.

A :class:`TruncatedSeries` of order N stores ``c_0..c_N`` where ``c_n`` is
the coefficient of ``t**n``. For ``egf`` this means ``c_n = D^n(w)/n!``.

The closed forms below never build a square root. With ``S, C`` from
:func:`sqrtfree_pair` we have ``sin(t*sqrt(A)) = sqrt(A)*S`` and
``cos(t*sqrt(A)) = C`` identically, so every quotient whose numerator and
denominator share a factor ``sqrt(A)`` can be written over the Laurent ring.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .grammar import Grammar, derivatives
from .laurent import ONE, ZERO, LaurentPoly, NotInvertibleError, parse_poly, poly_pow

__all__ = [
    "TruncatedSeries",
    "egf",
    "series_mul",
    "series_div",
    "series_ddt",
    "sqrtfree_pair",
    "andre_gf_rhs",
    "gessel_gf_rhs",
    "aux_gf_rhs",
]

Coef = Union[LaurentPoly, int, Fraction, str]


@dataclass(frozen=True, eq=True)
class TruncatedSeries:
    coeffs: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the t^0 coefficient")
        object.__setattr__(self, "coeffs", tuple(LaurentPoly.coerce(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value: Coef, order: int) -> TruncatedSeries:
        return cls((LaurentPoly.coerce(value),) + (ZERO,) * order)

    @classmethod
    def from_numerators(cls, numerators: Sequence[Coef]) -> TruncatedSeries:
        """Build from ``n! * c_n`` values, the usual way EGFs are tabulated."""
        return cls(tuple(LaurentPoly.coerce(p).scale(Fraction(1, math.factorial(n)))
                         for n, p in enumerate(numerators)))

    def numerators(self) -> list[LaurentPoly]:
        return [c.scale(math.factorial(n)) for n, c in enumerate(self.coeffs)]

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.coeffs[n]

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def map(self, f) -> TruncatedSeries:
        return TruncatedSeries(tuple(f(c) for c in self.coeffs))

    def __add__(self, other: TruncatedSeries | Coef) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order)
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return self.map(lambda c: -c)

    def __sub__(self, other: TruncatedSeries | Coef) -> TruncatedSeries:
        return self + (-other if isinstance(other, TruncatedSeries) else -LaurentPoly.coerce(other))

    def __rsub__(self, other: Coef) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other: TruncatedSeries | Coef) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        p = LaurentPoly.coerce(other)
        return self.map(lambda c: c * p)

    __rmul__ = __mul__

    def __truediv__(self, other: TruncatedSeries | Coef) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order)
        return series_div(self, other)

    def to_text(self) -> str:
        return "\n".join(f"{n}: {p}" for n, p in enumerate(self.numerators()))

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "coeffs": [str(p) for p in self.numerators()]})

    @classmethod
    def from_json(cls, text: str) -> TruncatedSeries:
        data = json.loads(text)
        coeffs = [parse_poly(s) for s in data["coeffs"]]
        if len(coeffs) != data["order"] + 1:
            raise ValueError("order does not match the number of coefficients")
        return cls.from_numerators(coeffs)


def egf(g: Grammar, w: Coef, order: int) -> TruncatedSeries:
    """``Gen(w, t)`` truncated at ``t**order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TruncatedSeries.from_numerators(derivatives(g, LaurentPoly.coerce(w), order))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    out = []
    for k in range(n + 1):
        acc = ZERO
        for i in range(k + 1):
            if a.coeffs[i] and b.coeffs[k - i]:
                acc = acc + a.coeffs[i] * b.coeffs[k - i]
        out.append(acc)
    return TruncatedSeries(tuple(out))


def series_div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """The q with ``q * b == a`` through ``min(a.order, b.order)``."""
    b0 = b.coeffs[0]
    if not b0.is_monomial():
        raise NotInvertibleError(f"leading coefficient not a unit: {b0}")
    inv = poly_pow(b0, -1)
    n = min(a.order, b.order)
    q: list[LaurentPoly] = []
    for k in range(n + 1):
        acc = a.coeffs[k]
        for i in range(k):
            if q[i] and b.coeffs[k - i]:
                acc = acc - q[i] * b.coeffs[k - i]
        q.append(acc * inv)
    return TruncatedSeries(tuple(q))


def series_ddt(a: TruncatedSeries) -> TruncatedSeries:
    if a.order < 1:
        raise ValueError("cannot differentiate a series of order 0")
    return TruncatedSeries(tuple(c.scale(n) for n, c in enumerate(a.coeffs) if n))


def sqrtfree_pair(kind: str, A: Coef, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``(S, C)`` with ``S = sin(t√A)/√A``, ``C = cos(t√A)`` (or sinh/cosh)."""
    if kind not in ("trig", "hyperbolic"):
        raise ValueError("kind must be 'trig' or 'hyperbolic'")
    if order < 0:
        raise ValueError("order must be nonnegative")
    A = LaurentPoly.coerce(A)
    if kind == "trig":
        A = -A
    S = [ZERO] * (order + 1)
    C = [ZERO] * (order + 1)
    power = ONE
    for n in range(order // 2 + 1):
        if 2 * n <= order:
            C[2 * n] = power.scale(Fraction(1, math.factorial(2 * n)))
        if 2 * n + 1 <= order:
            S[2 * n + 1] = power.scale(Fraction(1, math.factorial(2 * n + 1)))
        power = power * A
    return TruncatedSeries(tuple(S)), TruncatedSeries(tuple(C))


def andre_gf_rhs(order: int) -> TruncatedSeries:
    """EGF of the André polynomials in closed form, with ``A = 2x - y^2``."""
    x, y = parse_poly("x"), parse_poly("y")
    A = 2 * x - y * y
    S, C = sqrtfree_pair("trig", A, order)
    num = x + S * (y * A) - C * (x - y * y)
    den = S * (x - y * y) + C * y
    return series_div(num, den)


def gessel_gf_rhs(order: int) -> TruncatedSeries:
    """Gessel's EGF of the exterior peak polynomials, ``B = 1 - x``."""
    B = 1 - parse_poly("x")
    Sh, Ch = sqrtfree_pair("hyperbolic", B, order)
    return series_div(TruncatedSeries.constant(ONE, order), Ch - Sh)


def aux_gf_rhs(order: int) -> TruncatedSeries:
    """``v / (u cosh t + (v^2 - u) sinh t)``."""
    u, v = parse_poly("u"), parse_poly("v")
    sinh, cosh = sqrtfree_pair("hyperbolic", 1, order)
    den = cosh * u + sinh * (v * v - u)
    return series_div(TruncatedSeries.constant(v, order), den)
