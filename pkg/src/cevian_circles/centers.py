"""Triangle centers, their cevian triads, and closed-form Nagel cevian formulas."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Union

from .errors import CenterNotInterior, ConstructionFailed, InvalidSides
from .geometry import (
    Line,
    Point,
    Triangle,
    distance,
    line_intersection,
    point_in_triangle,
    side_lengths,
)
from .scalar import APPROX53


class CenterKind(enum.Enum):
    ORTHOCENTER = "orthocenter"
    CENTROID = "centroid"
    CIRCUMCENTER = "circumcenter"
    INCENTER = "incenter"
    GERGONNE = "gergonne"
    NAGEL = "nagel"


@dataclass(frozen=True)
class Custom:
    """An arbitrary point used in place of a named center."""

    point: Point


Center = Union[CenterKind, Custom]


def _weighted(points, weights) -> Point:
    total = sum(weights)
    return Point(
        sum(w * p.x for w, p in zip(weights, points)) / total,
        sum(w * p.y for w, p in zip(weights, points)) / total,
    )


def _lerp(p: Point, q: Point, t) -> Point:
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def _perpendicular_through(p: Point, q: Point, r: Point) -> Line:
    """Line through ``p`` perpendicular to segment ``qr``."""
    return Line.through(p, (q.y - r.y, r.x - q.x))


def contact_points(T: Triangle, kind: CenterKind, ctx=APPROX53) -> tuple[Point, Point, Point]:
    """Feet D, E, F of the Gergonne (incircle) or Nagel (excircle) cevians.

    Gergonne: BD = s - b, CE = s - c, AF = s - a.
    Nagel:    BD = s - c, CE = s - a, AF = s - b.
    """
    a, b, c = side_lengths(T, ctx)
    s = (a + b + c) / 2
    A, B, C = (p.to(ctx) for p in T.vertices)
    if kind is CenterKind.GERGONNE:
        bd, ce, af = s - b, s - c, s - a
    elif kind is CenterKind.NAGEL:
        bd, ce, af = s - c, s - a, s - b
    else:
        raise ValueError(f"{kind} has no contact-point construction")
    return _lerp(B, C, bd / a), _lerp(C, A, ce / b), _lerp(A, B, af / c)


def center_point(T: Triangle, kind: Center, ctx=APPROX53) -> Point:
    if isinstance(kind, Custom):
        return kind.point.to(ctx)
    A, B, C = (p.to(ctx) for p in T.vertices)
    if kind is CenterKind.CENTROID:
        return Point((A.x + B.x + C.x) / 3, (A.y + B.y + C.y) / 3)
    if kind is CenterKind.ORTHOCENTER:
        return line_intersection(
            _perpendicular_through(A, B, C), _perpendicular_through(B, C, A), ctx
        )
    if kind is CenterKind.CIRCUMCENTER:
        m_bc = _lerp(B, C, ctx.convert(1) / 2)
        m_ca = _lerp(C, A, ctx.convert(1) / 2)
        return line_intersection(
            _perpendicular_through(m_bc, B, C), _perpendicular_through(m_ca, C, A), ctx
        )
    if kind is CenterKind.INCENTER:
        return _weighted((A, B, C), side_lengths(T, ctx))
    D, E, _ = contact_points(T, kind, ctx)
    return line_intersection(Line(A, D), Line(B, E), ctx)


def _segment_parameter(p: Point, q: Point, x: Point):
    """t with x = p + t (q - p), by projection."""
    dx, dy = q.x - p.x, q.y - p.y
    return ((x.x - p.x) * dx + (x.y - p.y) * dy) / (dx * dx + dy * dy)


@dataclass(frozen=True)
class CevianTriad:
    """Interior point P with cevian feet D on BC, E on CA, F on AB.

    ``triangle`` and all points are already converted into ``ctx``.
    """

    triangle: Triangle
    P: Point
    D: Point
    E: Point
    F: Point
    kind: Center
    ctx: Any
    concurrency_residual: Any = 0

    @property
    def feet(self) -> tuple[Point, Point, Point]:
        return (self.D, self.E, self.F)


def _scale(T: Triangle):
    return max(max(abs(p.x), abs(p.y)) for p in T.vertices) or 1


def cevian_triad(T: Triangle, kind: Center, ctx=APPROX53) -> CevianTriad:
    P = center_point(T, kind, ctx)
    Tc = T.to(ctx)
    if not point_in_triangle(Tc, P):
        raise CenterNotInterior(f"{_kind_name(kind)} {P} is not strictly inside {T}")
    A, B, C = Tc.vertices
    feet = []
    for vertex, (p, q) in ((A, (B, C)), (B, (C, A)), (C, (A, B))):
        foot = line_intersection(Line(vertex, P), Line(p, q), ctx)
        t = _segment_parameter(p, q, foot)
        if not 0 < t < 1:
            raise ConstructionFailed(f"cevian foot {foot} falls outside its side")
        feet.append(foot)
    D, E, F = feet

    # each cevian line is built through P; certify that the feet keep it there
    worst = 0
    for vertex, foot in ((A, D), (B, E), (C, F)):
        cross = (foot.x - vertex.x) * (P.y - vertex.y) - (foot.y - vertex.y) * (P.x - vertex.x)
        worst = max(worst, abs(cross) / distance(vertex, foot, ctx) if not ctx.is_exact else abs(cross))
    if ctx.is_exact:
        if worst != 0:
            raise ConstructionFailed("cevians are not concurrent")
    elif worst > 2 ** (10 - ctx.width) * _scale(Tc):
        raise ConstructionFailed(f"cevian concurrency residual {float(worst):.3g} too large")
    return CevianTriad(Tc, P, D, E, F, kind, ctx, worst)


def _kind_name(kind: Center) -> str:
    return "custom point" if isinstance(kind, Custom) else kind.value


def ceva_product(triad: CevianTriad):
    """(BD/DC)(CE/EA)(AF/FB), from projection parameters (no square roots)."""
    A, B, C = triad.triangle.vertices
    product = 1
    for (p, q), foot in (((B, C), triad.D), ((C, A), triad.E), ((A, B), triad.F)):
        t = _segment_parameter(p, q, foot)
        product = product * (t / (1 - t))
    return product


def _checked_sides(a, b, c, ctx):
    a, b, c = (ctx.convert(x) for x in (a, b, c))
    if min(a, b, c) <= 0 or a >= b + c or b >= c + a or c >= a + b:
        raise InvalidSides(f"({a}, {b}, {c}) violates the strict triangle inequality")
    return a, b, c


def nagel_cevian_lengths_squared(a, b, c, ctx=APPROX53):
    """Squared Nagel cevians s^2 - 4K^2 / (x (s - x)) for x = a, b, c.

    Only rational operations, so exact under the exact profile.
    """
    a, b, c = _checked_sides(a, b, c, ctx)
    s = (a + b + c) / 2
    k2 = s * (s - a) * (s - b) * (s - c)
    return tuple(s * s - 4 * k2 / (x * (s - x)) for x in (a, b, c))


def nagel_cevian_lengths(a, b, c, ctx=APPROX53):
    """Lengths (AD, BE, CF) of the cevians through the Nagel point."""
    return tuple(ctx.sqrt(v) for v in nagel_cevian_lengths_squared(a, b, c, ctx))


def nagel_section_ratios(a, b, c, ctx=APPROX53):
    """Ratios in which the Nagel point divides each cevian, vertex side first."""
    a, b, c = _checked_sides(a, b, c, ctx)
    s = (a + b + c) / 2
    return (a / (s - a), b / (s - b), c / (s - c))
