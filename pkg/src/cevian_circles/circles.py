"""Incircles, excircles, the six-triangle subdivision and the six-circle families.

Segment labels follow the boundary of ABC counterclockwise::

    1 = BD   2 = DC   3 = CE   4 = EA   5 = AF   6 = FB

Small triangle i has segment i as base and apex P; large triangle i has the
same base and the vertex of ABC opposite it as apex.  Each member triangle is
stored as (X, Y, Z) with base X -> Y running counterclockwise, so the apex Z
is on the left of the base and all three vertices are counterclockwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .centers import CevianTriad
from .errors import ConstructionFailed, DegenerateTriangle
from .geometry import Line, Point, Triangle, distance, distance_point_to_line
from .scalar import APPROX53

SEGMENT_NAMES = ("BD", "DC", "CE", "EA", "AF", "FB")


class Family(enum.Enum):
    INCIRCLES = "incircles"
    EXCIRCLES_CONFIG1 = "excircles-config1"
    EXCIRCLES_CONFIG2 = "excircles-config2"


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: Any
    tangent_lines: tuple[Line, ...]
    # segment on which the circle must touch its first tangent line
    host: tuple[Point, Point] | None = None
    ctx: Any = field(default=APPROX53, repr=False, compare=False)


def tangency_residual(c: Circle):
    """Largest |distance(center, line) - radius| over the circle's tangent lines."""
    return max(abs(distance_point_to_line(c.center, L, c.ctx) - c.radius) for L in c.tangent_lines)


def contact_point(c: Circle, line: Line) -> Point:
    """Foot of the perpendicular from the center onto ``line``."""
    p, q = line.p, line.q
    dx, dy = q.x - p.x, q.y - p.y
    t = ((c.center.x - p.x) * dx + (c.center.y - p.y) * dy) / (dx * dx + dy * dy)
    return Point(p.x + t * dx, p.y + t * dy)


def touches_host(c: Circle) -> bool:
    """True iff the contact point with the host line lies strictly inside the host segment."""
    if c.host is None:
        return True
    p, q = c.host
    dx, dy = q.x - p.x, q.y - p.y
    t = ((c.center.x - p.x) * dx + (c.center.y - p.y) * dy) / (dx * dx + dy * dy)
    return 0 < t < 1


class Member:
    """A counterclockwise triangle (X, Y, Z) with base X -> Y, in one number context.

    ``lengths`` are (|XY|, |YZ|, |ZX|); ``K`` the area and ``s`` the semiperimeter.
    """

    __slots__ = ("X", "Y", "Z", "lengths", "K", "s", "_normals", "_lines")

    def __init__(self, X: Point, Y: Point, Z: Point, lengths, ctx=APPROX53):
        self.X, self.Y, self.Z = X, Y, Z
        self.lengths = lengths
        self.K = ((Y.x - X.x) * (Z.y - X.y) - (Y.y - X.y) * (Z.x - X.x)) / 2
        if not self.K > 0:
            raise DegenerateTriangle(f"member triangle {X}, {Y}, {Z} is not counterclockwise")
        self.s = (lengths[0] + lengths[1] + lengths[2]) / 2
        self._normals = self._lines = None

    @classmethod
    def of(cls, X: Point, Y: Point, Z: Point, ctx=APPROX53) -> Member:
        return cls(X, Y, Z, (distance(X, Y, ctx), distance(Y, Z, ctx), distance(Z, X, ctx)), ctx)

    @property
    def base(self):
        return self.lengths[0]

    @property
    def inradius(self):
        return self.K / self.s

    @property
    def base_exradius(self):
        """Radius of the excircle touching the base X -> Y."""
        return self.K / (self.s - self.lengths[0])

    def lines(self) -> tuple[Line, Line, Line]:
        if self._lines is None:
            self._lines = (Line(self.X, self.Y), Line(self.Y, self.Z), Line(self.Z, self.X))
        return self._lines

    def normals(self) -> tuple:
        """(nx, ny, n . p) per side: inward unit normal and offset."""
        if self._normals is None:
            verts = (self.X, self.Y, self.Z)
            rows = []
            for i in range(3):
                p, q = verts[i], verts[(i + 1) % 3]
                length = self.lengths[i]
                nx, ny = (p.y - q.y) / length, (q.x - p.x) / length
                rows.append((nx, ny, nx * p.x + ny * p.y))
            self._normals = tuple(rows)
        return self._normals

    def circle(self, excircle: bool, ctx=APPROX53) -> Circle:
        """Incircle, or excircle touching the base, with its center found by
        solving the three signed-distance equations n_i . Q - sign_i r = n_i . p_i.
        """
        radius = self.base_exradius if excircle else self.inradius
        (a0, b0, d0), (a1, b1, d1), (a2, b2, d2) = self.normals()
        # r's coefficient is -1, except +1 on the base for the excircle
        c0, c1, c2 = (1 if excircle else -1), -1, -1
        m0, m1, m2 = b1 * c2 - b2 * c1, a1 * c2 - a2 * c1, a1 * b2 - a2 * b1
        det = a0 * m0 - b0 * m1 + c0 * m2
        if det == 0:
            raise ConstructionFailed("tangent lines do not determine a circle")
        x = (d0 * m0 - b0 * (d1 * c2 - d2 * c1) + c0 * (d1 * b2 - d2 * b1)) / det
        y = (a0 * (d1 * c2 - d2 * c1) - d0 * m1 + c0 * (a1 * d2 - a2 * d1)) / det
        return Circle(Point(x, y), radius, self.lines(), (self.X, self.Y), ctx)


def member_circle(X: Point, Y: Point, Z: Point, excircle: bool, ctx=APPROX53) -> Circle:
    return Member.of(X, Y, Z, ctx).circle(excircle, ctx)


_SIDE_BASES = {"BC": ("B", "C", "A"), "CA": ("C", "A", "B"), "AB": ("A", "B", "C")}
_SIDE_ALIASES = {"a": "BC", "b": "CA", "c": "AB"}


def _side_member(T: Triangle, side: str, ctx) -> Member:
    side = _SIDE_ALIASES.get(side, side)
    try:
        names = _SIDE_BASES[side]
    except KeyError:
        raise ValueError(f"unknown side {side!r}; use BC, CA, AB or a, b, c") from None
    Tc = T.to(ctx)
    return Member.of(*(getattr(Tc, n) for n in names), ctx)


def inradius(T: Triangle, ctx=APPROX53):
    """K / s."""
    return _side_member(T, "BC", ctx).inradius


def exradius(T: Triangle, side: str, ctx=APPROX53):
    """K / (s - length of ``side``), the radius of the excircle touching ``side``."""
    return _side_member(T, side, ctx).base_exradius


def incircle(T: Triangle, ctx=APPROX53) -> Circle:
    circle = _side_member(T, "BC", ctx).circle(False, ctx)
    return Circle(circle.center, circle.radius, circle.tangent_lines, None, ctx)


def excircle(T: Triangle, side: str, ctx=APPROX53) -> Circle:
    return _side_member(T, side, ctx).circle(True, ctx)


@dataclass(frozen=True)
class Subdivision:
    """The six small and six large triangles cut out by a cevian triad."""

    triad: CevianTriad
    segments: tuple  # lengths BD, DC, CE, EA, AF, FB
    small: tuple[Member, ...]
    large: tuple[Member, ...]
    cevians: tuple  # lengths AD, BE, CF

    @property
    def small_s(self):
        return tuple(m.s for m in self.small)

    @property
    def small_K(self):
        return tuple(m.K for m in self.small)

    @property
    def large_s(self):
        return tuple(m.s for m in self.large)

    @property
    def large_K(self):
        return tuple(m.K for m in self.large)


def subdivide(T: Triangle, triad: CevianTriad) -> Subdivision:
    ctx = triad.ctx
    A, B, C = triad.triangle.vertices
    P, D, E, F = triad.P, triad.D, triad.E, triad.F

    def d(p, q):
        return distance(p, q, ctx)

    a, b, c = d(B, C), d(C, A), d(A, B)
    seg = (d(B, D), d(D, C), d(C, E), d(E, A), d(A, F), d(F, B))
    pa, pb, pc, pd, pe, pf = (d(P, X) for X in (A, B, C, D, E, F))
    ad, be, cf = d(A, D), d(B, E), d(C, F)
    small = (
        Member(B, D, P, (seg[0], pd, pb), ctx),
        Member(D, C, P, (seg[1], pc, pd), ctx),
        Member(C, E, P, (seg[2], pe, pc), ctx),
        Member(E, A, P, (seg[3], pa, pe), ctx),
        Member(A, F, P, (seg[4], pf, pa), ctx),
        Member(F, B, P, (seg[5], pb, pf), ctx),
    )
    large = (
        Member(B, D, A, (seg[0], ad, c), ctx),
        Member(D, C, A, (seg[1], b, ad), ctx),
        Member(C, E, B, (seg[2], be, a), ctx),
        Member(E, A, B, (seg[3], c, be), ctx),
        Member(A, F, C, (seg[4], cf, b), ctx),
        Member(F, B, C, (seg[5], a, cf), ctx),
    )
    return Subdivision(triad, seg, small, large, (ad, be, cf))


@dataclass(frozen=True)
class SixCircleSet:
    family: Family
    radii: tuple
    circles: tuple[Circle, ...]


def family_members(sub: Subdivision, family: Family) -> tuple[Member, ...]:
    return sub.large if family is Family.EXCIRCLES_CONFIG1 else sub.small


def six_radii(sub: Subdivision, family: Family) -> tuple:
    """Radii only, by formula: K_i/s_i or K_i/(s_i - base_i)."""
    if family is Family.INCIRCLES:
        return tuple(m.inradius for m in sub.small)
    return tuple(m.base_exradius for m in family_members(sub, family))


def six_circles(T: Triangle, triad: CevianTriad, family: Family, sub: Subdivision | None = None) -> SixCircleSet:
    sub = sub or subdivide(T, triad)
    excircle = family is not Family.INCIRCLES
    circles = tuple(m.circle(excircle, triad.ctx) for m in family_members(sub, family))
    return SixCircleSet(family, tuple(c.radius for c in circles), circles)
