"""Registry of the cevian/circle identities and their evaluation on one triangle."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Any

from .centers import CenterKind, Custom, cevian_triad, contact_points
from .circles import Circle, Family, Member, subdivide, tangency_residual, touches_host
from .errors import ConstraintViolated
from .expr import Expr, indexed, product, total
from .geometry import Point, Triangle, is_acute, vertex_angle
from .scalar import context_for, rel_residual

ANGLE_TOLERANCE = 1e-9
DEFAULT_TOLERANCE = 1e-9

r, R, s, K, seg = (indexed(n) for n in ("r", "R", "s", "K", "seg"))


class Members(enum.Enum):
    """Which member triangles feed the s_i and K_i variables."""

    SMALL = "small"
    LARGE = "large"


@dataclass(frozen=True)
class Constraint:
    kind: str = "none"  # "none" | "acute" | "angle_b"
    angle_over_pi: Fraction | None = None

    @classmethod
    def angle_b(cls, degrees: int) -> Constraint:
        return cls("angle_b", Fraction(degrees, 180))

    def check(self, T: Triangle, ctx) -> None:
        if self.kind == "acute":
            if not is_acute(T):
                raise ConstraintViolated(str(self), "triangle is not acute")
        elif self.kind == "angle_b":
            actual = vertex_angle(T, "B", ctx)
            target = ctx.pi * ctx.convert(self.angle_over_pi)
            if abs(actual - target) > ANGLE_TOLERANCE:
                raise ConstraintViolated(str(self), f"angle B = {float(actual):.12g} rad")

    def __str__(self) -> str:
        if self.kind == "angle_b":
            return f"angle_B={self.angle_over_pi * 180}deg"
        return self.kind


NONE = Constraint()
ACUTE = Constraint("acute")

# r1..r4 for the four circles on one cevian AD: incircles of ABD and ACD,
# then their excircles touching BD and DC
FOUR_CIRCLES = "four-circles-AD"


@dataclass(frozen=True)
class Identity:
    id: str
    anchor: str
    summary: str
    center: CenterKind | None  # None: any interior point
    constraint: Constraint
    family: Family | str | None  # feeds r_i
    lhs: Expr
    rhs: Expr
    second_family: Family | None = None  # feeds R_i
    members: Members = Members.SMALL
    holds: bool = True

    @cached_property
    def variables(self) -> frozenset[str]:
        return frozenset(self.lhs.variables() | self.rhs.variables())

    @property
    def uses_radii(self) -> bool:
        return bool(self.variables & {"r", "R"})

    def listing(self) -> dict:
        return {
            "id": self.id,
            "paper_anchor": self.anchor,
            "summary": self.summary,
            "center": self.center.value if self.center else "any-interior-point",
            "constraint": str(self.constraint),
            "family": _family_name(self.family),
            "second_family": _family_name(self.second_family),
            "members": self.members.value,
            "expression": f"{self.lhs} = {self.rhs}",
            "holds": self.holds,
        }


def _family_name(family) -> str | None:
    if family is None:
        return None
    return family.value if isinstance(family, Family) else family


def _odd(f):
    return [f(i) for i in (1, 3, 5)]


def _even(f):
    return [f(i) for i in (2, 4, 6)]


def _recips(f, idx):
    return total(1 / f(i) for i in idx)


_PROD = (product(_odd(r)), product(_even(r)))
_RECIP = (_recips(r, (1, 3, 5)), _recips(r, (2, 4, 6)))
_RECIP_145 = (_recips(r, (1, 4, 5)), _recips(r, (2, 3, 6)))

cos_alpha, cos_beta, cos_gamma = (indexed(n)(None) for n in ("cos_alpha", "cos_beta", "cos_gamma"))

C1, C2, INC = Family.EXCIRCLES_CONFIG1, Family.EXCIRCLES_CONFIG2, Family.INCIRCLES
H, M, O, I = CenterKind.ORTHOCENTER, CenterKind.CENTROID, CenterKind.CIRCUMCENTER, CenterKind.INCENTER
GE, NA = CenterKind.GERGONNE, CenterKind.NAGEL

CATALOG: tuple[Identity, ...] = (
    Identity("THM_2_1", "Theorem 2.1", "orthocenter, large-triangle excircles: product", H, ACUTE, C1, *_PROD),
    Identity("THM_2_2", "Theorem 2.2", "orthocenter, small-triangle excircles: product", H, ACUTE, C2, *_PROD),
    Identity(
        "LEM_3_1", "Lemma 3.1", "centroid, large-triangle semiperimeters: sum", M, NONE, None,
        total(_odd(s)), total(_even(s)), members=Members.LARGE,
    ),
    Identity("THM_3_1", "Theorem 3.1", "centroid, large-triangle excircles: reciprocal sum", M, NONE, C1, *_RECIP),
    Identity("THM_3_2", "Theorem 3.2", "centroid, small-triangle excircles: reciprocal sum", M, NONE, C2, *_RECIP),
    Identity(
        "LEM_4_1", "Lemma 4.1", "incircle-contact cevian: excircle ratio equals base ratio", GE, NONE, C1,
        r(1) / r(2), seg(1) / seg(2),
    ),
    Identity("THM_4_1", "Theorem 4.1", "Gergonne point, large-triangle excircles: product", GE, NONE, C1, *_PROD),
    Identity("LEM_5_1", "Lemma 5.1", "Nagel point, small-triangle areas: product", NA, NONE, None,
             product(_odd(K)), product(_even(K))),
    Identity("LEM_5_2", "Lemma 5.2", "Nagel point, small-triangle semiperimeters: product", NA, NONE, None,
             product(_odd(s)), product(_even(s))),
    Identity("THM_5_1", "Theorem 5.1", "Nagel point, small-triangle incircles: product", NA, NONE, INC, *_PROD),
    Identity(
        "LEM_5_3", "Lemma 5.3", "Nagel point, semiperimeter minus base: product", NA, NONE, None,
        product(s(i) - seg(i) for i in (1, 3, 5)), product(s(i) - seg(i) for i in (2, 4, 6)),
    ),
    Identity("THM_5_2", "Theorem 5.2", "Nagel point, small-triangle excircles: product", NA, NONE, C2, *_PROD),
    Identity(
        "THM_6_2", "Theorem 6.2", "one cevian AD: two incircles and two excircles", None, NONE, FOUR_CIRCLES,
        1 / r(1) + 1 / r(4), 1 / r(2) + 1 / r(3),
    ),
    Identity(
        "THM_6_3", "Theorem 6.3", "any interior point: six incircles times six excircles", None, NONE, INC,
        product(_odd(r) + _odd(R)), product(_even(r) + _even(R)), second_family=C2,
    ),
    Identity(
        "CONS_6_2", "Consequence of Theorem 6.2", "any interior point: twelve-circle reciprocal sum",
        None, NONE, INC,
        total([1 / x for x in _odd(r) + _even(R)]), total([1 / x for x in _even(r) + _odd(R)]),
        second_family=C2,
    ),
    Identity("THM_7_1", "Theorem 7.1", "circumcenter, small-triangle incircles: reciprocal sum", O, ACUTE, INC,
             *_RECIP),
    Identity("THM_7_2", "Theorem 7.2", "circumcenter, small-triangle excircles: reciprocal sum", O, ACUTE, C2,
             *_RECIP),
    Identity("THM_8_1", "Theorem 8.1", "incenter with angle B = 60 deg, incircles", I, Constraint.angle_b(60), INC,
             *_RECIP_145),
    Identity("THM_8_2", "Theorem 8.2", "incenter with angle B = 60 deg, small-triangle excircles", I,
             Constraint.angle_b(60), C2, *_RECIP_145),
    Identity(
        "THM_8_3", "Theorem 8.3", "incenter with angle B = 120 deg, small-triangle excircles", I,
        Constraint.angle_b(120), C2, _recips(r, (1, 3, 4, 6)), _recips(r, (2, 5)),
    ),
    Identity(
        "THM_8_4", "Theorem 8.4", "incenter, half-angle cosine weighted excircle reciprocals", I, NONE, C2,
        cos_gamma / r(1) + cos_alpha / r(3) + cos_beta / r(5),
        cos_beta / r(2) + cos_gamma / r(4) + cos_alpha / r(6),
    ),
    Identity(
        "NEG_CONTROL", "negative control", "deliberately false: orthocenter, r1 r2 r3 = r4 r5 r6", H, ACUTE, C1,
        product(r(i) for i in (1, 2, 3)), product(r(i) for i in (4, 5, 6)), holds=False,
    ),
)

BY_ID = {entry.id: entry for entry in CATALOG}
DEFAULT_POINT_WEIGHTS = (2, 3, 4)


def get(identity_id: str) -> Identity:
    try:
        return BY_ID[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}") from None


def catalog_listing() -> list[dict]:
    return [entry.listing() for entry in CATALOG]


def barycentric_point(T: Triangle, weights) -> Point:
    """Point with the given (positive) barycentric weights; rational when T is."""
    if T.is_rational():
        weights = [Fraction(w) for w in weights]
    total_w = sum(weights)
    return Point(
        sum(w * p.x for w, p in zip(weights, T.vertices)) / total_w,
        sum(w * p.y for w, p in zip(weights, T.vertices)) / total_w,
    )


@dataclass
class Evaluation:
    """Everything built for one (identity, triangle, width): values and circle checks."""

    env: dict
    circle_count: int = 0
    tangency_residual: float = 0.0  # worst circle, divided by its figure scale
    contacts_ok: bool = True


def _half_angle_cosines(sub, ctx):
    # cos^2(A/2) = s (s - a) / (b c)
    a, b, c = sub.large[2].lengths[2], sub.large[1].lengths[1], sub.large[0].lengths[2]
    sp = (a + b + c) / 2
    return (
        ctx.sqrt(sp * (sp - a) / (b * c)),
        ctx.sqrt(sp * (sp - b) / (c * a)),
        ctx.sqrt(sp * (sp - c) / (a * b)),
    )


def coordinate_scale(T: Triangle) -> float:
    return max(max(abs(float(p.x)), abs(float(p.y))) for p in T.vertices) or 1.0


def figure_scale(c: Circle, base: float) -> float:
    """Extent of the picture holding the triangle (``base``) and circle ``c``."""
    return max(base, max(abs(float(c.center.x)), abs(float(c.center.y))) + float(c.radius))


def _chosen_members(sub, family):
    if family == FOUR_CIRCLES:
        u1, u2 = sub.large[0], sub.large[1]
        return ((u1, False), (u2, False), (u1, True), (u2, True))
    excircle = family is not Family.INCIRCLES
    return tuple((m, excircle) for m in (sub.large if family is Family.EXCIRCLES_CONFIG1 else sub.small))


def family_circles(sub, family, ctx) -> list[Circle]:
    """The circles a radius family refers to, each solved from its tangent lines."""
    return [m.circle(ex, ctx) for m, ex in _chosen_members(sub, family)]


def _memo(shared: dict | None, key, make):
    if shared is None:
        return make()
    if key not in shared:
        shared[key] = make()
    return shared[key]


def build(
    identity: Identity,
    T: Triangle,
    ctx,
    point: Point | None = None,
    circles: bool = True,
    shared: dict | None = None,
) -> Evaluation:
    """Construct the triad, subdivision and circle families ``identity`` needs.

    ``shared`` is an optional memo for one (triangle, context): identities
    evaluated on the same sample reuse each other's constructions through it.
    """
    identity.constraint.check(T, ctx)
    if identity.center is None:
        center = Custom(point if point is not None else barycentric_point(T, DEFAULT_POINT_WEIGHTS))
        # one memo serves one sample, whose custom point is fixed
        key = "custom"
    else:
        center = key = identity.center

    def construct():
        # rational input is rounded once into the context, then everything stays there
        triad = cevian_triad(T.to(ctx), center, ctx)
        return subdivide(T, triad)

    sub = _memo(shared, ("sub", key), construct)
    members = sub.small if identity.members is Members.SMALL else sub.large
    env: dict[str, Any] = {
        "s": tuple(m.s for m in members),
        "K": tuple(m.K for m in members),
        "seg": sub.segments,
    }
    out = Evaluation(env)

    def checked(family):
        made = family_circles(sub, family, ctx)
        base = coordinate_scale(T)
        worst = max(float(tangency_residual(c)) / figure_scale(c, base) for c in made)
        return tuple(c.radius for c in made), worst, all(touches_host(c) for c in made)

    def radii_of(family):
        if not circles:
            return tuple(m.base_exradius if ex else m.inradius for m, ex in _chosen_members(sub, family))
        radii, worst, contacts = _memo(shared, ("circles", key, family), lambda: checked(family))
        out.circle_count += len(radii)
        out.tangency_residual = max(out.tangency_residual, worst)
        out.contacts_ok = out.contacts_ok and contacts
        return radii

    if identity.family is not None:
        env["r"] = radii_of(identity.family)
    if identity.second_family is not None:
        env["R"] = radii_of(identity.second_family)
    if "cos_alpha" in identity.variables:
        env["cos_alpha"], env["cos_beta"], env["cos_gamma"] = _half_angle_cosines(sub, ctx)
    return out


@dataclass(frozen=True)
class IdentityReport:
    id: str
    triangle: Triangle
    lhs: Any
    rhs: Any
    abs_residual: Any
    rel_residual: float
    passed: bool
    precision_width: int | None
    tangency_residual: float = 0.0  # worst circle, divided by its figure scale
    contacts_ok: bool = True
    circle_count: int = 0

    @property
    def geometry_ok(self) -> bool:
        return self.contacts_ok and self.tangency_residual <= 1e-9


def evaluate_identity(
    identity: Identity | str,
    T: Triangle,
    width: int | None = 53,
    *,
    point: Point | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
    circles: bool = True,
    shared: dict | None = None,
) -> IdentityReport:
    """Evaluate both sides of ``identity`` on ``T`` at mantissa width ``width``.

    ``width=None`` runs in the exact profile, which only succeeds when every
    square root involved happens to be rational.
    """
    if isinstance(identity, str):
        identity = get(identity)
    ctx = context_for(width)
    ev = build(identity, T, ctx, point, circles, shared)
    lhs, rhs = identity.lhs.evaluate(ev.env), identity.rhs.evaluate(ev.env)
    rel = rel_residual(lhs, rhs)
    return IdentityReport(
        identity.id, T, lhs, rhs, abs(lhs - rhs), rel, rel <= tolerance, width,
        ev.tangency_residual, ev.contacts_ok, ev.circle_count,
    )


def lemma_4_1_ratio(T: Triangle, width: int | None = 53):
    """(r1/r2, BD/DC) for D the incircle contact on BC.

    r1, r2 are the excircles of ABD and ADC touching BD and DC.
    """
    ctx = context_for(width)
    Tc = T.to(ctx)
    A, B, C = Tc.vertices
    D, _, _ = contact_points(T, CenterKind.GERGONNE, ctx)
    abd, adc = Member.of(B, D, A, ctx), Member.of(D, C, A, ctx)
    return abd.base_exradius / adc.base_exradius, abd.base / adc.base
