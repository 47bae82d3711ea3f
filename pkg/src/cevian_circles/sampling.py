"""Deterministic, counter-based triangle sampling.

Sample ``k`` of a spec is a pure function of ``(spec, k, width)``: the random
stream for it is a Philox generator keyed by the seed with ``k`` written into
the counter, so samples can be produced in any order or in parallel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DegenerateTriangle, InvalidSpec, SpecInfeasible
from .geometry import Point, Triangle, is_acute, vertex_angle
from .scalar import EXACT, approx, ulp

MAX_ATTEMPTS = 10_000
# stream ids inside one sample's counter block
TRIANGLE_STREAM = 0
POINT_STREAM = 1
PLACEMENT_STREAM = 2


class SamplerFamily(enum.Enum):
    GENERAL = "general"
    ACUTE = "acute"
    ANGLE_B = "angle_b"
    APEX_ON_LINE = "apex_on_line"


@dataclass(frozen=True)
class SamplerSpec:
    family: SamplerFamily = SamplerFamily.GENERAL
    lo: Fraction = Fraction(-1)
    hi: Fraction = Fraction(1)
    grid_bits: int = 24  # coordinates are multiples of 2**-grid_bits
    min_angle: float = 0.1
    seed: int = 0
    angle_over_pi: Fraction | None = None  # ANGLE_B only

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise InvalidSpec(f"empty coordinate range [{self.lo}, {self.hi}]")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.min_angle < math.pi / 3:
            raise InvalidSpec(f"minimum angle {self.min_angle} is unattainable")
        if self.family is SamplerFamily.ANGLE_B:
            if self.angle_over_pi is None or not 0 < self.angle_over_pi < 1:
                raise InvalidSpec("ANGLE_B needs an angle strictly between 0 and pi")
            object.__setattr__(self, "angle_over_pi", Fraction(self.angle_over_pi))
            if math.pi * float(self.angle_over_pi) + 2 * self.min_angle >= math.pi:
                raise InvalidSpec("angle at B leaves no room for the quality bound")
        elif self.angle_over_pi is not None:
            raise InvalidSpec(f"{self.family.value} takes no angle")
        if self.family is SamplerFamily.ACUTE and self.min_angle >= math.pi / 3:
            raise InvalidSpec("acute triangles cannot have every angle that large")

    @classmethod
    def angle_b(cls, degrees, **kw) -> SamplerSpec:
        return cls(SamplerFamily.ANGLE_B, angle_over_pi=Fraction(degrees) / 180, **kw)

    def with_seed(self, seed: int) -> SamplerSpec:
        return replace(self, seed=seed)

    def describe(self) -> str:
        if self.family is SamplerFamily.ANGLE_B:
            return f"angle_b={self.angle_over_pi * 180}deg"
        return self.family.value


def counter_rng(seed: int, k: int, stream: int = TRIANGLE_STREAM) -> np.random.Generator:
    """Generator for sample ``k``; distinct (k, stream) pairs never share counters."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, stream, k, 0]))


def _grid(rng: np.random.Generator, spec: SamplerSpec, size: int, positive: bool = False) -> list[float]:
    """Grid coordinates as binary64 values, which hold them exactly (dyadic, < 2**53)."""
    scale = 1 << spec.grid_bits
    if positive:
        lo, hi = 1, math.floor(max(abs(spec.lo), abs(spec.hi)) * scale)
    else:
        lo, hi = math.ceil(spec.lo * scale), math.floor(spec.hi * scale)
    return [math.ldexp(float(v), -spec.grid_bits) for v in rng.integers(lo, hi, size=size, endpoint=True)]


def _min_angle(T: Triangle) -> float:
    return min(vertex_angle(T, v) for v in "ABC")


def _fits(spec: SamplerSpec, T: Triangle) -> bool:
    if _min_angle(T) < spec.min_angle:
        return False
    if spec.family is SamplerFamily.ACUTE:
        return is_acute(T)
    return True


def _angle_b_triangle(spec: SamplerSpec, rng, width: int):
    ctx = approx(width)
    theta = ctx.pi * ctx.convert(spec.angle_over_pi)
    cos_t, sin_t = ctx.cos(theta), ctx.sin(theta)
    for _ in range(MAX_ATTEMPTS):
        u, c = _grid(rng, spec, 2, positive=True)
        # quality is judged on a binary64 probe so every width accepts the same (u, c)
        angle = math.pi * float(spec.angle_over_pi)
        probe = Triangle(Point(u * math.cos(angle), u * math.sin(angle)), Point(0.0, 0.0), Point(c, 0.0))
        if _min_angle(probe) < spec.min_angle:
            continue
        uc, zero = ctx.convert(u), ctx.convert(0)
        return Triangle(Point(uc * cos_t, uc * sin_t), Point(zero, zero), Point(ctx.convert(c), zero))
    raise SpecInfeasible(f"no triangle met {spec} after {MAX_ATTEMPTS} attempts")


@lru_cache(maxsize=1 << 16)
def sample_triangle(spec: SamplerSpec, k: int, width: int = 53) -> Triangle:
    """The ``k``-th triangle of ``spec``.

    Rational coordinates for every family except ANGLE_B, whose apex A sits on
    the ray at the exact angle from B and is rounded at ``width`` bits.
    B is placed at the origin and C on the positive x-axis for ANGLE_B.
    """
    rng = counter_rng(spec.seed, k, TRIANGLE_STREAM)
    if spec.family is SamplerFamily.ANGLE_B:
        return _angle_b_triangle(spec, rng, width)
    for _ in range(MAX_ATTEMPTS):
        if spec.family is SamplerFamily.APEX_ON_LINE:
            ax, ay, bx, cx = _grid(rng, spec, 4)
            if ay == 0:
                continue
            pts = (Point(ax, abs(ay)), Point(bx, 0.0), Point(cx, 0.0))
        else:
            xs = _grid(rng, spec, 6)
            pts = (Point(xs[0], xs[1]), Point(xs[2], xs[3]), Point(xs[4], xs[5]))
        try:
            T = Triangle(*pts)
        except DegenerateTriangle:
            continue
        if _fits(spec, T):
            return T.to(EXACT)
    raise SpecInfeasible(f"no triangle met {spec} after {MAX_ATTEMPTS} attempts")


@lru_cache(maxsize=1 << 16)
def satisfies(spec: SamplerSpec, T: Triangle, width: int = 53) -> bool:
    """Family predicate plus quality bound, checked on an emitted triangle."""
    if _min_angle(T) < spec.min_angle - 1e-12:
        return False
    if spec.family is SamplerFamily.ACUTE:
        return is_acute(T)
    if spec.family is SamplerFamily.ANGLE_B:
        ctx = approx(width)
        target = ctx.pi * ctx.convert(spec.angle_over_pi)
        return abs(vertex_angle(T, "B", ctx) - target) <= 4 * ulp(target, width)
    if spec.family is SamplerFamily.APEX_ON_LINE:
        return T.B.y == 0 and T.C.y == 0 and T.A.y != 0
    return True


@lru_cache(maxsize=1 << 16)
def sample_point(spec: SamplerSpec, k: int, T: Triangle) -> Point:
    """Interior point of ``T`` from rational barycentric weights, each >= 1/20 of the total."""
    rng = counter_rng(spec.seed, k, POINT_STREAM)
    weights = [Fraction(int(w)) for w in rng.integers(1, 19, size=3, endpoint=True)]
    weights = [w + Fraction(sum(weights), 17) for w in weights]
    total = sum(weights)
    if T.is_rational():
        return Point(
            sum(w * p.x for w, p in zip(weights, T.vertices)) / total,
            sum(w * p.y for w, p in zip(weights, T.vertices)) / total,
        )
    fw = [float(w / total) for w in weights]
    return Point(sum(w * p.x for w, p in zip(fw, T.vertices)), sum(w * p.y for w, p in zip(fw, T.vertices)))
