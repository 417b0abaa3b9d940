"""Tutte, Potts, and characteristic polynomials by subset expansion.

These depend only on the rank function of the underlying matroid, never on
signs, and serve as the independent reference side for the coflow-based
identities.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Poly
from .matroid import OrientedMatroid

XY = ("x", "y")
QY = ("q", "y")


def tutte(om: OrientedMatroid) -> Poly:
    """Corank-nullity subset expansion over all element subsets."""
    x = Poly.variable(XY, "x")
    y = Poly.variable(XY, "y")
    r = om.rank
    total = Poly(XY, {})
    for s in range(1 << om.n):
        rs = om.rank_of(s)
        total = total + (x - 1) ** (r - rs) * (y - 1) ** (s.bit_count() - rs)
    return total


def potts(om: OrientedMatroid) -> Poly:
    """Partition-function form: sum_S y^(|E|-|S|) (1-y)^|S| q^(rank(E)-rank(S))."""
    q = Poly.variable(QY, "q")
    y = Poly.variable(QY, "y")
    r = om.rank
    total = Poly(QY, {})
    for s in range(1 << om.n):
        k = s.bit_count()
        total = total + y ** (om.n - k) * (1 - y) ** k * q ** (r - om.rank_of(s))
    return total


def characteristic(om: OrientedMatroid) -> Poly:
    """(-1)^rank * T(1-q, 0), as a univariate polynomial in q."""
    t = tutte(om)
    qv = ("q",)
    one_minus_q = Poly.const(qv, 1) - Poly.variable(qv, "q")
    out = t.compose(qv, {"x": one_minus_q, "y": Fraction(0)})
    return out * Fraction(-1) ** om.rank


def potts_tutte_residual(om: OrientedMatroid, q0, y0) -> Fraction:
    """Difference of the two sides of the Potts-Tutte change of variables.

    P(q, y) - y^|E| (1/y - 1)^rank T(1 + q/(1/y - 1), 1/y) at a rational
    point with y0 not in {0, 1}; zero iff the identity holds there.
    """
    q0, y0 = Fraction(q0), Fraction(y0)
    if y0 in (0, 1):
        raise ValueError("need y0 outside {0, 1}")
    lhs = potts(om).eval_frac({"q": q0, "y": y0})
    u = 1 / y0 - 1
    rhs = y0**om.n * u**om.rank * tutte(om).eval_frac(
        {"x": 1 + q0 / u, "y": 1 / y0}
    )
    return lhs - rhs
