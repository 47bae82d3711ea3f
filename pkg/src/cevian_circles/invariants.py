"""Invariant scans: quantities that stay fixed while two vertices move.

Two scans are supported.  With the apex A fixed and B, C sliding along a line
L, 1/r - 1/r_a equals 2/h, where h is the distance from A to L.  With B and C
sliding along two fixed rays from A that meet at angle theta, r * r_a / K
equals tan(theta / 2).  Here r_a is the radius of the excircle touching BC.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import coordinate_scale, figure_scale
from .circles import Member, contact_point, tangency_residual, touches_host
from .errors import InvalidSpec
from .geometry import Line, Point, Triangle, distance, distance_point_to_line, orientation
from .sampling import PLACEMENT_STREAM, counter_rng
from .scalar import approx, rel_residual

SPREAD_TOLERANCE = 1e-10


class InvariantKind(enum.Enum):
    INRADIUS_EXRADIUS_LINE = "inradius-exradius-line"
    FIXED_ANGLE = "fixed-angle"


@dataclass(frozen=True)
class ApexInvariantSpec:
    """Apex plus either a base line (``line``) or two rays (``rays``, directions from the apex).

    Placements put B and C at rational parameters in [lo, hi]: positions
    along the line's direction from its anchor, or distances along the rays.
    """

    apex: Point
    line: Line | None = None
    rays: tuple[tuple, tuple] | None = None
    lo: Fraction = Fraction(-4)
    hi: Fraction = Fraction(4)
    grid_bits: int = 20

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if (self.line is None) == (self.rays is None):
            raise InvalidSpec("give exactly one of a base line or a pair of rays")
        if not self.lo < self.hi:
            raise InvalidSpec(f"empty placement range [{self.lo}, {self.hi}]")
        if self.line is not None:
            if orientation(self.line.p, self.line.q, self.apex) == 0:
                raise InvalidSpec(f"apex {self.apex} lies on the base line")
        else:
            (ux, uy), (vx, vy) = self.rays
            if (ux, uy) == (0, 0) or (vx, vy) == (0, 0):
                raise InvalidSpec("ray directions must be nonzero")
            cross = Fraction(ux) * Fraction(vy) - Fraction(uy) * Fraction(vx)
            if cross == 0:
                raise InvalidSpec("rays must be distinct and not opposite")
            if self.lo <= 0:
                raise InvalidSpec("distances along rays must be positive")

    @classmethod
    def on_line(cls, apex, line: Line, lo=-4, hi=4, **kw) -> ApexInvariantSpec:
        return cls(Point(*apex), line=line, lo=lo, hi=hi, **kw)

    @classmethod
    def between_rays(cls, apex, u, v, lo=Fraction(1, 4), hi=4, **kw) -> ApexInvariantSpec:
        return cls(Point(*apex), rays=(tuple(u), tuple(v)), lo=lo, hi=hi, **kw)

    @property
    def kind(self) -> InvariantKind:
        return InvariantKind.INRADIUS_EXRADIUS_LINE if self.line is not None else InvariantKind.FIXED_ANGLE


@dataclass
class ScanReport:
    kind: InvariantKind
    n: int
    seed: int
    width: int
    target: float
    minimum: float
    maximum: float
    max_target_deviation: float  # relative, worst placement
    max_tangent_length_deviation: float  # relative |AT| vs s
    max_tangency_residual: float
    contact_failures: int = 0
    values: list = field(default_factory=list, repr=False)

    @property
    def relative_spread(self) -> float:
        return rel_residual(self.maximum, self.minimum)

    @property
    def passed(self) -> bool:
        return (
            self.relative_spread <= SPREAD_TOLERANCE
            and self.max_target_deviation <= SPREAD_TOLERANCE
            and self.max_tangent_length_deviation <= SPREAD_TOLERANCE
            and self.max_tangency_residual <= 1e-9
            and self.contact_failures == 0
        )


def _placement(spec: ApexInvariantSpec, rng) -> tuple[Fraction, Fraction]:
    scale = 1 << spec.grid_bits
    lo, hi = math.ceil(spec.lo * scale), math.floor(spec.hi * scale)
    gap = (hi - lo) // 50  # keeps B and C apart
    while True:
        t, u = (Fraction(int(v), scale) for v in rng.integers(lo, hi, size=2, endpoint=True))
        if abs(t - u) * scale >= gap and (spec.line is None or t != u):
            return t, u


def placed_triangle(spec: ApexInvariantSpec, t, u) -> Triangle:
    A = spec.apex
    if spec.line is not None:
        (dx, dy), p = spec.line.direction, spec.line.p
        B, C = Point(p.x + t * dx, p.y + t * dy), Point(p.x + u * dx, p.y + u * dy)
    else:
        (ux, uy), (vx, vy) = spec.rays
        B, C = Point(A.x + t * ux, A.y + t * uy), Point(A.x + u * vx, A.y + u * vy)
    return Triangle(A, B, C)


def target_value(spec: ApexInvariantSpec, width: int = 53):
    """2/h for the line scan, tan(theta/2) for the ray scan."""
    ctx = approx(width)
    if spec.line is not None:
        return 2 / distance_point_to_line(spec.apex.to(ctx), Line(spec.line.p.to(ctx), spec.line.q.to(ctx)), ctx)
    (ux, uy), (vx, vy) = (tuple(ctx.convert(c) for c in d) for d in spec.rays)
    theta = ctx.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)
    return ctx.tan(theta / 2)


def apex_values(T: Triangle, kind: InvariantKind, ctx):
    """(invariant value, r-circle, r_a-circle, |AT|, s) with A the apex of ``T``.

    r_a is the excircle touching BC; T is its contact point with line AB.
    """
    Tc = T.to(ctx)
    A, B, C = Tc.vertices
    member = Member.of(B, C, A, ctx)  # base BC, apex A
    incircle, excircle = member.circle(False, ctx), member.circle(True, ctx)
    r, ra = member.inradius, member.base_exradius
    value = 1 / r - 1 / ra if kind is InvariantKind.INRADIUS_EXRADIUS_LINE else r * ra / member.K
    at = distance(A, contact_point(excircle, Line(A, B)), ctx)
    return value, incircle, excircle, at, member.s


def invariant_scan(
    kind: InvariantKind | str,
    spec: ApexInvariantSpec,
    n: int = 1000,
    seed: int = 0,
    width: int = 53,
) -> ScanReport:
    """Evaluate the invariant on n random placements of B and C."""
    kind = InvariantKind(kind)
    if kind is not spec.kind:
        raise InvalidSpec(f"{kind.value} scan needs a {'base line' if kind is InvariantKind.INRADIUS_EXRADIUS_LINE else 'pair of rays'}")
    ctx = approx(width)
    target = target_value(spec, width)
    values, worst_target, worst_at, worst_tangency, contact_failures = [], 0.0, 0.0, 0.0, 0
    for k in range(n):
        t, u = _placement(spec, counter_rng(seed, k, PLACEMENT_STREAM))
        T = placed_triangle(spec, t, u)
        value, incircle, excircle, at, s = apex_values(T, kind, ctx)
        values.append(float(value))
        worst_target = max(worst_target, rel_residual(value, target))
        worst_at = max(worst_at, rel_residual(at, s))
        base = coordinate_scale(T)
        for c in (incircle, excircle):
            worst_tangency = max(worst_tangency, float(tangency_residual(c)) / figure_scale(c, base))
            contact_failures += not touches_host(c)
    return ScanReport(
        kind, n, seed, width, float(target), min(values), max(values),
        worst_target, worst_at, worst_tangency, contact_failures, values,
    )


def default_specs() -> dict[InvariantKind, ApexInvariantSpec]:
    """The scans run by the command line: A=(0,3) over the x-axis, and the wedge between (4,0) and (1,2)."""
    return {
        InvariantKind.INRADIUS_EXRADIUS_LINE: ApexInvariantSpec.on_line(
            (Fraction(0), Fraction(3)), Line(Point(Fraction(0), Fraction(0)), Point(Fraction(1), Fraction(0)))
        ),
        InvariantKind.FIXED_ANGLE: ApexInvariantSpec.between_rays(
            (Fraction(0), Fraction(0)), (Fraction(4), Fraction(0)), (Fraction(1), Fraction(2))
        ),
    }


def spot_values(width: int = 53) -> dict[str, tuple]:
    """(computed, expected) at A=(0,3), B=(0,0), C=(4,0): 1/r - 1/r_a = 2/3 and, with apex B, r r_a / K = 1."""
    ctx = approx(width)
    line_T = Triangle(Point(0, 3), Point(0, 0), Point(4, 0))
    angle_T = Triangle(Point(0, 0), Point(0, 3), Point(4, 0))
    line_value = apex_values(line_T, InvariantKind.INRADIUS_EXRADIUS_LINE, ctx)[0]
    angle_value = apex_values(angle_T, InvariantKind.FIXED_ANGLE, ctx)[0]
    return {
        "inradius-exradius-line": (line_value, ctx.convert(Fraction(2, 3))),
        "fixed-angle": (angle_value, ctx.convert(1)),
    }
