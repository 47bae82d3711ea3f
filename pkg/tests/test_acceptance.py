"""Acceptance suite: one test per criterion, each printing a single pass/fail line.

The expensive runs (the full catalog at seed 1, the precision ladder, the
oracle and invariant scans) are computed once per module and shared.
"""

import io
import json
import time
from fractions import Fraction

import pytest

from cevian_circles import catalog
from cevian_circles.catalog import coordinate_scale, figure_scale
from cevian_circles.centers import nagel_cevian_lengths_squared
from cevian_circles.circles import Member, tangency_residual, touches_host
from cevian_circles.cli import run_cli
from cevian_circles.geometry import Point, squared_distance
from cevian_circles.harness import (
    GEOMETRY_TOLERANCE,
    identity_permutation,
    oracle_crosschecks,
    permutation_search,
    run_suite,
)
from cevian_circles.invariants import default_specs, invariant_scan, spot_values
from cevian_circles.report import strip_timing
from cevian_circles.sampling import SamplerFamily, SamplerSpec, sample_triangle
from cevian_circles.scalar import EXACT, approx, rel_residual

RUNTIME_BUDGET = 60.0
TRUE_IDS = [e.id for e in catalog.CATALOG if e.holds]


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def verify_all(jobs):
    out, err = io.StringIO(), io.StringIO()
    start = time.perf_counter()
    code = run_cli(["verify", "all", "--seed", "1", "--jobs", str(jobs)], out, err)
    return code, json.loads(out.getvalue()), time.perf_counter() - start, err.getvalue()


@pytest.fixture(scope="module")
def catalog_run():
    return verify_all(1)


@pytest.fixture(scope="module")
def ladder():
    return {s.id: s for s in run_suite([e.id for e in catalog.CATALOG], n=100, widths=(150, 300))}


@pytest.fixture(scope="module")
def oracles():
    return oracle_crosschecks(seed=0, n=10_000)


@pytest.fixture(scope="module")
def scans():
    return {kind: invariant_scan(kind, spec, n=1000) for kind, spec in default_specs().items()}


def test_criterion_1_catalog(capsys, catalog_run):
    code, doc, elapsed, err = catalog_run
    true_rows = [r for r in doc["results"] if r["expected"] == "pass"]
    failing = [r["id"] for r in true_rows if not (r["pass"] and r["pass_count"] == r["n"])]
    sizes_ok = all(
        r["n"] == (2000 if r["sampler"].startswith("angle_b") else 10_000) for r in doc["results"]
    )
    ok = (
        code == 0 and not failing and sizes_ok and len(true_rows) == len(TRUE_IDS)
        and doc["run"] == {"seed": 1, "widths": [53], "tolerance": 1e-9}
        and elapsed <= RUNTIME_BUDGET
    )
    announce(capsys, 1, ok, f"{len(true_rows) - len(failing)}/{len(true_rows)} true identities pass, {elapsed:.1f} s")
    assert not failing, err
    assert sizes_ok and code == 0
    assert elapsed <= RUNTIME_BUDGET


def test_criterion_2_precision_ladder(capsys, ladder):
    worst = {w: max(ladder[i].per_width[w]["max_rel_residual"] for i in TRUE_IDS) for w in (150, 300)}
    neg = ladder["NEG_CONTROL"].per_width
    neg_min = min(neg[w]["min_rel_residual"] for w in (150, 300))
    ok = worst[150] <= 1e-30 and worst[300] <= 1e-70 and neg_min > 1e-6
    announce(capsys, 2, ok, f"max rel w150 {worst[150]:.2e}, w300 {worst[300]:.2e}; NEG_CONTROL min {neg_min:.2e}")
    assert worst[150] <= 1e-30
    assert worst[300] <= 1e-70
    assert neg_min > 1e-6


def test_criterion_3_oracles(capsys, oracles):
    wanted = ("nagel_cevian_lengths", "nagel_section_ratios")
    counts = {name: oracles.checks[name].n for name in wanted}
    # AD^2 = 18 from the length formula, and from A=(0,3), D=(3,0) on the 3-4-5 triangle
    worked = nagel_cevian_lengths_squared(4, 5, 3, EXACT)[0]
    from_coords = squared_distance(Point(Fraction(0), Fraction(3)), Point(Fraction(3), Fraction(0)), EXACT)
    worked_ok = worked == 18 and from_coords == 18
    ok = oracles.passed and all(c >= 30_000 for c in counts.values()) and oracles.tolerance == 1e-10 and worked_ok
    worst = max(c.max_rel_error for c in oracles.checks.values())
    announce(capsys, 3, ok, f"10000 triangles, worst rel error {worst:.2e}; AD^2 = {worked}")
    assert oracles.passed
    assert worked_ok


def test_criterion_4_invariants(capsys, scans):
    spots = spot_values()
    spots_ok = all(rel_residual(c, e) <= 1e-12 for c, e in spots.values())
    spreads = {k.value: r.relative_spread for k, r in scans.items()}
    deviations = {k.value: r.max_target_deviation for k, r in scans.items()}
    ok = all(r.passed and r.n == 1000 for r in scans.values()) and spots_ok
    detail = ", ".join(f"{k} spread {spreads[k]:.1e} deviation {deviations[k]:.1e}" for k in spreads)
    announce(capsys, 4, ok, detail + f"; spot values {'ok' if spots_ok else 'wrong'}")
    assert all(v <= 1e-10 for v in spreads.values())
    assert all(v <= 1e-10 for v in deviations.values())
    assert spots_ok


def _oracle_circles(n=10_000):
    # the whole-triangle incircle and excircles built by the oracle checks
    ctx = approx(53)
    spec = SamplerSpec(SamplerFamily.GENERAL, seed=0)
    worst, misses = 0.0, 0
    for k in range(n):
        T = sample_triangle(spec, k)
        A, B, C = T.to(ctx).vertices
        base = coordinate_scale(T)
        members = (Member.of(B, C, A, ctx), Member.of(C, A, B, ctx), Member.of(A, B, C, ctx))
        circles = [members[0].circle(False, ctx)] + [m.circle(True, ctx) for m in members]
        for c in circles:
            worst = max(worst, float(tangency_residual(c)) / figure_scale(c, base))
            misses += not touches_host(c)
    return worst, misses


def test_criterion_5_tangency(capsys, catalog_run, ladder, scans):
    _, doc, _, _ = catalog_run
    catalog_worst = max(r["max_tangency_residual"] for r in doc["results"])
    catalog_misses = sum(r["contact_failures"] for r in doc["results"])
    ladder_worst = max(s.max_tangency_residual for s in ladder.values())
    ladder_misses = sum(s.contact_failures for s in ladder.values())
    scan_worst = max(r.max_tangency_residual for r in scans.values())
    scan_misses = sum(r.contact_failures for r in scans.values())
    oracle_worst, oracle_misses = _oracle_circles()
    worst = max(catalog_worst, ladder_worst, scan_worst, oracle_worst)
    misses = catalog_misses + ladder_misses + scan_misses + oracle_misses
    ok = worst <= GEOMETRY_TOLERANCE and misses == 0
    announce(
        capsys, 5, ok,
        f"worst tangency/scale: catalog {catalog_worst:.1e}, ladder {ladder_worst:.1e}, "
        f"scans {scan_worst:.1e}, oracles {oracle_worst:.1e}; contacts off-segment {misses}",
    )
    assert worst <= GEOMETRY_TOLERANCE
    assert misses == 0


def test_criterion_6_labeling(capsys):
    found = {i: permutation_search(i, m=50) for i in ("THM_7_1", "THM_7_2", "THM_8_1", "THM_8_2")}
    confirmed = {i: identity_permutation() in perms for i, perms in found.items()}
    ok = all(confirmed.values())
    announce(capsys, 6, ok, ", ".join(f"{i} {len(found[i])} relabelings, documented {'holds' if c else 'FAILS'}"
                                      for i, c in confirmed.items()))
    assert ok, {i: sorted(found[i])[:5] for i, c in confirmed.items() if not c}


def test_criterion_7_determinism(capsys, catalog_run):
    _, first, _, _ = catalog_run
    code, second, _, _ = verify_all(2)
    a = json.dumps(strip_timing(first), indent=2).encode()
    b = json.dumps(strip_timing(second), indent=2).encode()
    ok = a == b and code == 0
    announce(capsys, 7, ok, f"jobs 1 vs jobs 2: {len(a)} bytes, {'identical' if a == b else 'DIFFERENT'}")
    assert a == b


def test_criterion_8_sensitivity(capsys, catalog_run):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(["verify", "NEG_CONTROL", "--seed", "1"], out, err)
    row = json.loads(out.getvalue())["results"][0]
    _, doc, _, _ = catalog_run
    in_catalog = next(r for r in doc["results"] if r["id"] == "NEG_CONTROL")
    ok = code == 1 and row["failure_rate"] >= 0.99 and in_catalog["ok"]
    announce(capsys, 8, ok, f"exit {code}, failure rate {row['failure_rate']:.4f} over {row['n']} samples")
    assert code == 1
    assert row["failure_rate"] >= 0.99
