"""Planar primitives: points, lines, triangles and the measurements on them.

Every measurement takes a number context (see :mod:`cevian_circles.scalar`).
When the inputs are rational, polynomial quantities (squared distances,
doubled areas) are formed exactly and rounded once into the context, so the
approximate profile only loses accuracy at square roots and trig calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from fractions import Fraction
from typing import Any, Literal

from .errors import DegenerateTriangle, ParallelLines
from .scalar import APPROX53, EXACT, to_fraction

Vertex = Literal["A", "B", "C"]

_RATIONAL_TYPES = frozenset({int, Fraction})

# Shewchuk's ccwerrboundA for binary64
_CCW_ERRBOUND = (3.0 + 16.0 * 2.0**-53) * 2.0**-53


@dataclass(frozen=True, slots=True)
class Point:
    x: Any
    y: Any

    def __iter__(self):
        yield self.x
        yield self.y

    def is_rational(self) -> bool:
        return type(self.x) in _RATIONAL_TYPES and type(self.y) in _RATIONAL_TYPES

    def to(self, ctx) -> Point:
        return Point(ctx.convert(self.x), ctx.convert(self.y))


@dataclass(frozen=True, slots=True)
class Line:
    """Oriented line through two distinct anchors, pointing from ``p`` to ``q``."""

    p: Point
    q: Point

    def __post_init__(self):
        if self.p.x == self.q.x and self.p.y == self.q.y:
            raise ValueError("line anchors must be distinct")

    @classmethod
    def through(cls, p: Point, direction: tuple) -> Line:
        return cls(p, Point(p.x + direction[0], p.y + direction[1]))

    @property
    def direction(self) -> tuple:
        return (self.q.x - self.p.x, self.q.y - self.p.y)


def _exact_orient(a: Point, b: Point, c: Point) -> int:
    ax, ay = to_fraction(a.x), to_fraction(a.y)
    bx, by = to_fraction(b.x), to_fraction(b.y)
    cx, cy = to_fraction(c.x), to_fraction(c.y)
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear.

    Exact for every input type; binary64 inputs take a filtered fast path.
    """
    if type(a.x) is float and type(b.x) is float and type(c.x) is float and \
            type(a.y) is float and type(b.y) is float and type(c.y) is float:
        left = (a.x - c.x) * (b.y - c.y)
        right = (a.y - c.y) * (b.x - c.x)
        det = left - right
        bound = _CCW_ERRBOUND * (abs(left) + abs(right))
        if det > bound:
            return 1
        if -det > bound:
            return -1
    return _exact_orient(a, b, c)


class Triangle:
    """Non-degenerate triangle with vertices stored counterclockwise.

    A clockwise input is normalized by swapping ``B`` and ``C``; ``A`` keeps
    its label.  Coordinates are kept as given (rational or approximate).
    """

    __slots__ = ("A", "B", "C")

    def __init__(self, A: Point, B: Point, C: Point):
        A, B, C = (p if isinstance(p, Point) else Point(*p) for p in (A, B, C))
        turn = orientation(A, B, C)
        if turn == 0:
            raise DegenerateTriangle(f"collinear vertices {A}, {B}, {C}")
        if turn < 0:
            B, C = C, B
        self.A, self.B, self.C = A, B, C

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.A, self.B, self.C)

    def is_rational(self) -> bool:
        return all(p.is_rational() for p in self.vertices)

    def to(self, ctx) -> Triangle:
        """Copy with coordinates converted into ``ctx``.

        Conversion keeps the counterclockwise orientation, so no re-check runs.
        """
        t = object.__new__(Triangle)
        t.A, t.B, t.C = (p.to(ctx) for p in self.vertices)
        return t

    def scaled(self, factor) -> Triangle:
        return Triangle(*(Point(p.x * factor, p.y * factor) for p in self.vertices))

    def coords(self) -> list[list[str]]:
        """Coordinates as strings, for reports."""
        return [[str(p.x), str(p.y)] for p in self.vertices]

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangle) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Triangle(A={self.A}, B={self.B}, C={self.C})"


def squared_distance(p: Point, q: Point, ctx=APPROX53):
    if ctx is APPROX53 and type(p.x) is float and type(q.x) is float and type(p.y) is float and type(q.y) is float:
        dx, dy = q.x - p.x, q.y - p.y
        return dx * dx + dy * dy
    if p.is_rational() and q.is_rational():
        dx, dy = Fraction(q.x) - Fraction(p.x), Fraction(q.y) - Fraction(p.y)
        return ctx.convert(dx * dx + dy * dy)
    dx = ctx.convert(q.x) - ctx.convert(p.x)
    dy = ctx.convert(q.y) - ctx.convert(p.y)
    return dx * dx + dy * dy


def distance(p: Point, q: Point, ctx=APPROX53):
    return ctx.sqrt(squared_distance(p, q, ctx))


def doubled_signed_area(a: Point, b: Point, c: Point, ctx=APPROX53):
    if a.is_rational() and b.is_rational() and c.is_rational():
        ax, ay = Fraction(a.x), Fraction(a.y)
        det = (Fraction(b.x) - ax) * (Fraction(c.y) - ay) - (Fraction(b.y) - ay) * (Fraction(c.x) - ax)
        return ctx.convert(det)
    ax, ay = ctx.convert(a.x), ctx.convert(a.y)
    return (ctx.convert(b.x) - ax) * (ctx.convert(c.y) - ay) - (ctx.convert(b.y) - ay) * (ctx.convert(c.x) - ax)


def side_lengths(T: Triangle, ctx=APPROX53):
    """(a, b, c) = (|BC|, |CA|, |AB|)."""
    return (distance(T.B, T.C, ctx), distance(T.C, T.A, ctx), distance(T.A, T.B, ctx))


def area(T: Triangle, ctx=APPROX53):
    return abs(doubled_signed_area(T.A, T.B, T.C, ctx)) / 2


def semiperimeter(T: Triangle, ctx=APPROX53):
    a, b, c = side_lengths(T, ctx)
    return (a + b + c) / 2


def area_of(a: Point, b: Point, c: Point, ctx=APPROX53):
    """Unsigned area of three points, 0 when collinear."""
    return abs(doubled_signed_area(a, b, c, ctx)) / 2


def line_intersection(L1: Line, L2: Line, ctx=APPROX53) -> Point:
    p1, p2 = L1.p.to(ctx), L2.p.to(ctx)
    d1x, d1y = ctx.convert(L1.q.x) - p1.x, ctx.convert(L1.q.y) - p1.y
    d2x, d2y = ctx.convert(L2.q.x) - p2.x, ctx.convert(L2.q.y) - p2.y
    denom = d1x * d2y - d1y * d2x
    if ctx.is_exact:
        if denom == 0:
            raise ParallelLines(f"{L1} and {L2} are parallel")
    else:
        scale = max(abs(d1x), abs(d1y), abs(d2x), abs(d2y))
        if abs(denom) <= 2 ** (10 - ctx.width) * scale * scale:
            raise ParallelLines(f"{L1} and {L2} are parallel to working precision")
    t = ((p2.x - p1.x) * d2y - (p2.y - p1.y) * d2x) / denom
    return Point(p1.x + t * d1x, p1.y + t * d1y)


def distance_point_to_line(P: Point, L: Line, ctx=APPROX53):
    p, q = L.p, L.q
    if ctx is APPROX53 and type(P.x) is float and type(p.x) is float and type(q.x) is float \
            and type(P.y) is float and type(p.y) is float and type(q.y) is float:
        dx, dy = q.x - p.x, q.y - p.y
        return abs(dx * (P.y - p.y) - dy * (P.x - p.x)) / sqrt(dx * dx + dy * dy)
    cross = doubled_signed_area(L.p, L.q, P, ctx)
    return abs(cross) / distance(L.p, L.q, ctx)


_OPPOSITE = {"A": ("B", "C"), "B": ("C", "A"), "C": ("A", "B")}


def vertex_angle(T: Triangle, v: Vertex, ctx=APPROX53):
    """Interior angle at vertex ``v`` in radians, in (0, pi)."""
    conv = ctx.convert
    o = getattr(T, v)
    p, q = (getattr(T, name) for name in _OPPOSITE[v])
    o, p, q = Point(conv(o.x), conv(o.y)), Point(conv(p.x), conv(p.y)), Point(conv(q.x), conv(q.y))
    ux, uy = p.x - o.x, p.y - o.y
    vx, vy = q.x - o.x, q.y - o.y
    return ctx.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


def point_in_triangle(T: Triangle, P: Point) -> bool:
    """True iff ``P`` is strictly inside ``T``; boundary points are outside."""
    return (
        orientation(T.A, T.B, P) > 0
        and orientation(T.B, T.C, P) > 0
        and orientation(T.C, T.A, P) > 0
    )


def _dot_sign(o: Point, p: Point, q: Point) -> int:
    """Exact sign of (p - o) . (q - o); binary64 inputs take a filtered fast path."""
    if type(o.x) is float and type(p.x) is float and type(q.x) is float and \
            type(o.y) is float and type(p.y) is float and type(q.y) is float:
        left = (p.x - o.x) * (q.x - o.x)
        right = (p.y - o.y) * (q.y - o.y)
        dot = left + right
        bound = _CCW_ERRBOUND * (abs(left) + abs(right))
        if dot > bound:
            return 1
        if -dot > bound:
            return -1
    ox, oy = to_fraction(o.x), to_fraction(o.y)
    dot = (to_fraction(p.x) - ox) * (to_fraction(q.x) - ox) + (to_fraction(p.y) - oy) * (to_fraction(q.y) - oy)
    return (dot > 0) - (dot < 0)


def is_acute(T: Triangle) -> bool:
    """Exact test that all three angles are below a right angle."""
    A, B, C = T.vertices
    if T.is_rational():
        # dyadic rationals convert to binary64 exactly, which enables the filter
        fast = [Point(float(p.x), float(p.y)) for p in T.vertices]
        if all(to_fraction(f.x) == p.x and to_fraction(f.y) == p.y for f, p in zip(fast, T.vertices)):
            A, B, C = fast
    return _dot_sign(A, B, C) > 0 and _dot_sign(B, C, A) > 0 and _dot_sign(C, A, B) > 0
