"""Batch trials, precision ladders, permutation search and oracle cross-checks."""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import catalog
from .catalog import Identity, evaluate_identity
from .centers import CenterKind, ceva_product, cevian_triad, nagel_cevian_lengths, nagel_section_ratios
from .circles import Member, contact_point
from .errors import GeometryError, IncompatibleSpec, NoPermutationFound
from .geometry import Line, distance, side_lengths
from .sampling import SamplerFamily, SamplerSpec, sample_point, sample_triangle, satisfies
from .scalar import approx, rel_residual

DEFAULT_N = 10_000
DEFAULT_N_ANGLE = 2_000
DEFAULT_TOLERANCE = catalog.DEFAULT_TOLERANCE
GEOMETRY_TOLERANCE = 1e-9  # tangency residual per unit figure scale
SENSITIVITY = 0.99


def default_spec(identity: Identity, seed: int = 0) -> SamplerSpec:
    """The sampler family an identity's constraint calls for."""
    c = identity.constraint
    if c.kind == "acute":
        return SamplerSpec(SamplerFamily.ACUTE, seed=seed)
    if c.kind == "angle_b":
        return SamplerSpec(SamplerFamily.ANGLE_B, seed=seed, angle_over_pi=c.angle_over_pi)
    return SamplerSpec(SamplerFamily.GENERAL, seed=seed)


def default_n(spec: SamplerSpec) -> int:
    return DEFAULT_N_ANGLE if spec.family is SamplerFamily.ANGLE_B else DEFAULT_N


def check_compatible(identity: Identity, spec: SamplerSpec) -> None:
    c = identity.constraint
    if c.kind == "acute" and spec.family is not SamplerFamily.ACUTE:
        raise IncompatibleSpec(f"{identity.id} needs acute triangles, sampler draws {spec.describe()}")
    if c.kind == "angle_b" and (
        spec.family is not SamplerFamily.ANGLE_B or spec.angle_over_pi != c.angle_over_pi
    ):
        raise IncompatibleSpec(f"{identity.id} needs {c}, sampler draws {spec.describe()}")


def _histogram_key(rel: float) -> str:
    if rel == 0:
        return "0"
    return f"1e{max(-400, min(0, math.floor(math.log10(rel))))}"


@dataclass
class SampleOutcome:
    k: int
    rel: dict  # width -> relative residual
    passed: bool
    tangency: float
    contacts_ok: bool
    constraint_ok: bool
    elapsed: float = 0.0  # seconds spent evaluating this identity


@dataclass
class TrialSummary:
    id: str
    n: int
    pass_count: int
    max_rel_residual: float
    histogram: dict
    widths: tuple
    seed: int
    wall_time: float
    sampler: str
    tolerance: float
    holds: bool
    per_width: dict = field(default_factory=dict)
    worst: dict | None = None
    max_tangency_residual: float = 0.0
    contact_failures: int = 0
    constraint_failures: int = 0

    @property
    def geometry_ok(self) -> bool:
        return (
            self.contact_failures == 0
            and self.constraint_failures == 0
            and self.max_tangency_residual <= GEOMETRY_TOLERANCE
        )

    @property
    def passed(self) -> bool:
        """Every sample met the tolerance and every circle validated."""
        return self.pass_count == self.n and self.geometry_ok

    @property
    def failure_rate(self) -> float:
        return (self.n - self.pass_count) / self.n if self.n else 0.0

    @property
    def ok(self) -> bool:
        """True identities must pass; a false one must be caught on >= 99% of samples."""
        if self.holds:
            return self.passed
        return self.failure_rate >= SENSITIVITY and self.geometry_ok


def _evaluate_sample(identities, spec: SamplerSpec, k: int, widths, tolerance) -> list[SampleOutcome]:
    """Outcomes of every identity on sample k; constructions are shared between them."""
    state = [[{}, True, 0.0, True, True, 0.0] for _ in identities]
    any_point = any(identity.center is None for identity in identities)
    for w in widths:
        T = sample_triangle(spec, k, w)
        constraint_ok = satisfies(spec, T, w)
        point = sample_point(spec, k, T) if any_point else None
        shared: dict = {}
        for identity, st in zip(identities, state):
            start = time.perf_counter()
            report = evaluate_identity(
                identity, T, w,
                point=point if identity.center is None else None,
                tolerance=tolerance, shared=shared,
            )
            st[5] += time.perf_counter() - start
            st[0][w] = report.rel_residual
            st[1] = st[1] and report.passed
            st[2] = max(st[2], report.tangency_residual)
            st[3] = st[3] and report.contacts_ok
            st[4] = st[4] and constraint_ok
    return [SampleOutcome(k, *st) for st in state]


def _run_chunk(ids: Sequence[str], spec: SamplerSpec, ks: Sequence[int], widths, tolerance):
    identities = [catalog.get(i) for i in ids]
    return [_evaluate_sample(identities, spec, k, widths, tolerance) for k in ks]


def _chunks(n: int, parts: int) -> list[range]:
    size = max(1, math.ceil(n / parts))
    return [range(i, min(n, i + size)) for i in range(0, n, size)]


def _run_group(identities, spec, n, widths, tolerance, jobs) -> list[list[SampleOutcome]]:
    """Per-sample outcome rows, in sample order."""
    ids = [i.id for i in identities]
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _run_chunk,
                itertools.repeat(ids),
                itertools.repeat(spec),
                _chunks(n, jobs * 4),
                itertools.repeat(widths),
                itertools.repeat(tolerance),
            )
            return [row for part in parts for row in part]
    return _run_chunk(ids, spec, range(n), widths, tolerance)


def run_suite(
    identities: Iterable[Identity | str],
    n: int | None = None,
    widths: Iterable[int] = (53,),
    tolerance: float = DEFAULT_TOLERANCE,
    jobs: int = 1,
    seed: int = 0,
    spec: SamplerSpec | None = None,
) -> list[TrialSummary]:
    """Run several identities, each on its default sampler unless ``spec`` is given.

    Identities drawing from the same sampler are evaluated together, sample by
    sample, so a triangle's cevians, subdivision and circles are built once.
    Results come back in input order and match :func:`run_trials` run one by one.
    """
    identities = [catalog.get(i) if isinstance(i, str) else i for i in identities]
    widths = tuple(widths)
    specs = []
    for identity in identities:
        chosen = default_spec(identity, seed) if spec is None else spec.with_seed(seed)
        check_compatible(identity, chosen)
        specs.append(chosen)
    groups: dict = {}
    for index, chosen in enumerate(specs):
        groups.setdefault(chosen, []).append(index)
    results: list[TrialSummary | None] = [None] * len(identities)
    for chosen, members in groups.items():
        count = default_n(chosen) if n is None else n
        rows = _run_group([identities[i] for i in members], chosen, count, widths, tolerance, jobs)
        for column, index in enumerate(members):
            outcomes = [row[column] for row in rows]
            wall = sum(o.elapsed for o in outcomes)
            results[index] = summarize(identities[index], chosen, outcomes, widths, tolerance, wall)
    return results


def run_trials(
    identity: Identity | str,
    spec: SamplerSpec | None = None,
    n: int | None = None,
    widths: Iterable[int] = (53,),
    tolerance: float = DEFAULT_TOLERANCE,
    jobs: int = 1,
    seed: int | None = None,
) -> TrialSummary:
    """Evaluate ``identity`` on samples 0..n-1 of ``spec`` at every width.

    The summary is a pure function of the arguments (apart from timings),
    whatever ``jobs`` is: samples are independent and the reductions (count,
    max, histogram) do not depend on order.
    """
    if isinstance(identity, str):
        identity = catalog.get(identity)
    if spec is None:
        spec = default_spec(identity, seed or 0)
    elif seed is not None:
        spec = spec.with_seed(seed)
    check_compatible(identity, spec)
    n = default_n(spec) if n is None else n
    widths = tuple(widths)
    start = time.perf_counter()
    outcomes = [row[0] for row in _run_group([identity], spec, n, widths, tolerance, jobs)]
    return summarize(identity, spec, outcomes, widths, tolerance, time.perf_counter() - start)


def summarize(identity, spec, outcomes: list[SampleOutcome], widths, tolerance, wall) -> TrialSummary:
    histogram: dict[str, int] = {}
    per_width = {w: {"pass_count": 0, "max_rel_residual": 0.0, "min_rel_residual": math.inf} for w in widths}
    worst, worst_rel = None, -1.0
    for o in sorted(outcomes, key=lambda o: o.k):
        for w, rel in o.rel.items():
            key = _histogram_key(rel)
            histogram[key] = histogram.get(key, 0) + 1
            entry = per_width[w]
            entry["pass_count"] += rel <= tolerance
            entry["max_rel_residual"] = max(entry["max_rel_residual"], rel)
            entry["min_rel_residual"] = min(entry["min_rel_residual"], rel)
            if rel > worst_rel:
                worst_rel, worst = rel, (o.k, w)
    summary = TrialSummary(
        id=identity.id,
        n=len(outcomes),
        pass_count=sum(o.passed for o in outcomes),
        max_rel_residual=max((max(o.rel.values()) for o in outcomes), default=0.0),
        histogram=dict(sorted(histogram.items(), key=lambda kv: (kv[0] != "0", _decade(kv[0])))),
        widths=widths,
        seed=spec.seed,
        wall_time=wall,
        sampler=spec.describe(),
        tolerance=tolerance,
        holds=identity.holds,
        per_width=per_width,
        max_tangency_residual=max((o.tangency for o in outcomes), default=0.0),
        contact_failures=sum(not o.contacts_ok for o in outcomes),
        constraint_failures=sum(not o.constraint_ok for o in outcomes),
    )
    if worst is not None:
        k, w = worst
        T = sample_triangle(spec, k, w)
        summary.worst = {"k": k, "width": w, "rel_residual": worst_rel, "triangle": T.coords()}
    return summary


def _decade(key: str) -> int:
    return 0 if key == "0" else int(key[2:])


def precision_ladder(
    identity: Identity | str,
    spec: SamplerSpec | None = None,
    n: int = 100,
    widths: Sequence[int] = (150, 300),
    seed: int = 0,
) -> dict[int, list[float]]:
    """Relative residuals of samples 0..n-1 at each width, in sample order."""
    if isinstance(identity, str):
        identity = catalog.get(identity)
    spec = spec or default_spec(identity, seed)
    check_compatible(identity, spec)
    out: dict[int, list[float]] = {}
    for w in widths:
        out[w] = [
            _evaluate_sample([identity], spec, k, (w,), DEFAULT_TOLERANCE)[0].rel[w] for k in range(n)
        ]
    return out


def all_permutations(size: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(1, size + 1)))


def permutation_search(
    identity: Identity | str,
    spec: SamplerSpec | None = None,
    m: int = 50,
    tolerance: float = DEFAULT_TOLERANCE,
    width: int = 53,
) -> frozenset[tuple[int, ...]]:
    """All relabelings of the radii under which ``identity`` holds on m samples.

    r_i (and R_i when present) are replaced by r_sigma(i).  Raises
    NoPermutationFound when no relabeling works.
    """
    if isinstance(identity, str):
        identity = catalog.get(identity)
    if not identity.uses_radii:
        raise ValueError(f"{identity.id} does not depend on indexed radii")
    spec = spec or default_spec(identity)
    check_compatible(identity, spec)
    ctx = approx(width)
    envs = []
    for k in range(m):
        T = sample_triangle(spec, k, width)
        point = sample_point(spec, k, T) if identity.center is None else None
        envs.append(catalog.build(identity, T, ctx, point, circles=False).env)
    size = len(envs[0]["r"])
    survivors = set()
    for perm in all_permutations(size):
        lhs, rhs = identity.lhs.reindex(perm), identity.rhs.reindex(perm)
        if all(rel_residual(lhs.evaluate(env), rhs.evaluate(env)) <= tolerance for env in envs):
            survivors.add(perm)
    if not survivors:
        raise NoPermutationFound(f"no relabeling of the radii satisfies {identity.id}")
    return frozenset(survivors)


def identity_permutation(size: int = 6) -> tuple[int, ...]:
    return tuple(range(1, size + 1))


@dataclass
class OracleCheck:
    name: str
    n: int = 0
    failures: int = 0
    max_rel_error: float = 0.0

    def record(self, computed, reference, tolerance: float) -> None:
        err = rel_residual(computed, reference)
        self.n += 1
        self.max_rel_error = max(self.max_rel_error, err)
        self.failures += err > tolerance

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class OracleReport:
    seed: int
    n: int
    tolerance: float
    checks: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())


def _solved_radius(member: Member, excircle: bool, ctx):
    """Radius from the three-line equidistance solve: distance of the solved center to the base."""
    circle = member.circle(excircle, ctx)
    X, Y = member.X, member.Y
    dx, dy = Y.x - X.x, Y.y - X.y
    return abs(dx * (circle.center.y - X.y) - dy * (circle.center.x - X.x)) / ctx.sqrt(dx * dx + dy * dy)


def oracle_crosschecks(seed: int = 0, n: int = 1000, width: int = 53, tolerance: float = 1e-10) -> OracleReport:
    """Closed-form formulas against coordinate constructions on n random triangles."""
    ctx = approx(width)
    spec = SamplerSpec(SamplerFamily.GENERAL, seed=seed)
    names = (
        "nagel_cevian_lengths",
        "nagel_section_ratios",
        "gergonne_contact_lengths",
        "nagel_contact_lengths",
        "exradius_formula",
        "inradius_formula",
        "excircle_tangent_length",
        "ceva_product",
    )
    checks = {name: OracleCheck(name) for name in names}
    for k in range(n):
        T = sample_triangle(spec, k, width)
        a, b, c = side_lengths(T, ctx)
        s = (a + b + c) / 2
        A, B, C = T.to(ctx).vertices

        nagel = cevian_triad(T, CenterKind.NAGEL, ctx)
        for formula, (vertex, foot) in zip(
            nagel_cevian_lengths(a, b, c, ctx), ((A, nagel.D), (B, nagel.E), (C, nagel.F))
        ):
            checks["nagel_cevian_lengths"].record(formula, distance(vertex, foot, ctx), tolerance)
        for formula, (vertex, foot) in zip(
            nagel_section_ratios(a, b, c, ctx), ((A, nagel.D), (B, nagel.E), (C, nagel.F))
        ):
            measured = distance(vertex, nagel.P, ctx) / distance(nagel.P, foot, ctx)
            checks["nagel_section_ratios"].record(formula, measured, tolerance)

        # incircle of ABC touches BC at distance s - b from B; excircle at s - c
        whole = Member.of(B, C, A, ctx)
        for excircle, name, expected in (
            (False, "gergonne_contact_lengths", (s - b, s - c)),
            (True, "nagel_contact_lengths", (s - c, s - b)),
        ):
            circle = whole.circle(excircle, ctx)
            touch = contact_point(circle, Line(B, C))
            checks[name].record(distance(B, touch, ctx), expected[0], tolerance)
            checks[name].record(distance(touch, C, ctx), expected[1], tolerance)
        for side, member in (("BC", whole), ("CA", Member.of(C, A, B, ctx)), ("AB", Member.of(A, B, C, ctx))):
            checks["exradius_formula"].record(member.base_exradius, _solved_radius(member, True, ctx), tolerance)
        checks["inradius_formula"].record(whole.inradius, _solved_radius(whole, False, ctx), tolerance)

        # the excircle opposite A touches line AB at distance s from A
        ex_a = whole.circle(True, ctx)
        checks["excircle_tangent_length"].record(distance(A, contact_point(ex_a, Line(A, B)), ctx), s, tolerance)

        for kind in CenterKind:
            try:
                triad = cevian_triad(T, kind, ctx)
            except GeometryError:
                continue
            checks["ceva_product"].record(ceva_product(triad), 1, tolerance)
    return OracleReport(seed, n, tolerance, checks)
