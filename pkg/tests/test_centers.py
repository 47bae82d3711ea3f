import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cevian_circles.centers import (
    CenterKind,
    Custom,
    ceva_product,
    center_point,
    cevian_triad,
    contact_points,
    nagel_cevian_lengths,
    nagel_cevian_lengths_squared,
    nagel_section_ratios,
)
from cevian_circles.errors import CenterNotInterior, InvalidSides
from cevian_circles.geometry import Point, Triangle, distance, is_acute, orientation, side_lengths
from cevian_circles.scalar import EXACT, approx

from conftest import triangles

F = Fraction
RATIONAL_KINDS = (CenterKind.CENTROID, CenterKind.ORTHOCENTER, CenterKind.CIRCUMCENTER)


def test_named_centers_of_right_triangle(right_triangle):
    T = right_triangle
    assert center_point(T, CenterKind.CENTROID, EXACT) == Point(F(4, 3), F(1))
    assert center_point(T, CenterKind.ORTHOCENTER, EXACT) == T.B
    assert center_point(T, CenterKind.CIRCUMCENTER, EXACT) == Point(F(2), F(3, 2))
    incenter = center_point(T, CenterKind.INCENTER, EXACT)  # sides are rational here
    assert incenter == Point(1, 1)


def test_centroid_triad_feet_are_midpoints(right_triangle):
    triad = cevian_triad(right_triangle, CenterKind.CENTROID, EXACT)
    assert triad.D == Point(2, 0)
    assert triad.E == Point(2, F(3, 2))
    assert triad.F == Point(0, F(3, 2))
    assert ceva_product(triad) == 1


def test_nagel_foot_of_right_triangle(right_triangle):
    # BD = s - c = 6 - 3
    triad = cevian_triad(right_triangle, CenterKind.NAGEL, EXACT)
    assert triad.D == Point(3, 0)


def test_orthocenter_on_vertex_is_not_interior(right_triangle):
    with pytest.raises(CenterNotInterior):
        cevian_triad(right_triangle, CenterKind.ORTHOCENTER, EXACT)


def test_obtuse_orthocenter_is_not_interior():
    T = Triangle(Point(0, 0), Point(10, 0), Point(1, 1))
    with pytest.raises(CenterNotInterior):
        cevian_triad(T, CenterKind.ORTHOCENTER)


def test_custom_point_on_edge_is_rejected(right_triangle):
    with pytest.raises(CenterNotInterior):
        cevian_triad(right_triangle, Custom(Point(F(2), F(0))), EXACT)


@pytest.mark.parametrize("kind", [CenterKind.GERGONNE, CenterKind.NAGEL])
def test_ceva_product_of_contact_triads(right_triangle, kind):
    assert ceva_product(cevian_triad(right_triangle, kind)) == pytest.approx(1, rel=1e-12)


def test_nagel_cevian_length_worked_value():
    squared = nagel_cevian_lengths_squared(4, 5, 3, EXACT)
    assert squared[0] == 18
    assert nagel_cevian_lengths(4, 5, 3)[0] == pytest.approx(math.sqrt(18), rel=1e-15)
    # coordinate oracle: A=(0,3), D=(3,0)
    assert distance(Point(0, 3), Point(3, 0)) == pytest.approx(nagel_cevian_lengths(4, 5, 3)[0], rel=1e-12)


def test_nagel_cevians_of_equilateral_are_equal():
    ad, be, cf = nagel_cevian_lengths(1, 1, 1)
    assert ad == be == cf


def test_nagel_section_ratios():
    assert nagel_section_ratios(4, 5, 3, EXACT) == (2, 5, 1)
    assert nagel_section_ratios(1, 1, 1, EXACT) == (2, 2, 2)


def test_nagel_section_ratio_coordinate_oracle(right_triangle):
    triad = cevian_triad(right_triangle, CenterKind.NAGEL, EXACT)
    assert triad.P == Point(2, 1)  # splits A=(0,3) -> D=(3,0) at 2:1


@pytest.mark.parametrize("sides", [(1, 2, 3), (0, 1, 1), (5, 1, 1), (-1, 2, 2)])
def test_invalid_sides(sides):
    with pytest.raises(InvalidSides):
        nagel_cevian_lengths(*sides)
    with pytest.raises(InvalidSides):
        nagel_section_ratios(*sides)


@given(triangles)
def test_rational_centers_concurrent_exactly(T):
    for kind in RATIONAL_KINDS:
        try:
            triad = cevian_triad(T, kind, EXACT)
        except CenterNotInterior:
            assert kind is not CenterKind.CENTROID
            continue
        assert triad.concurrency_residual == 0
        assert ceva_product(triad) == 1
        for vertex, foot in zip(triad.triangle.vertices, triad.feet):
            assert orientation(vertex, foot, triad.P) == 0


@given(triangles)
def test_all_centers_concurrent_within_tolerance(T):
    scale = max(max(abs(float(p.x)), abs(float(p.y))) for p in T.vertices)
    for kind in CenterKind:
        try:
            triad = cevian_triad(T, kind)
        except CenterNotInterior:
            assert kind in (CenterKind.ORTHOCENTER, CenterKind.CIRCUMCENTER) and not is_acute(T)
            continue
        assert triad.concurrency_residual <= 2.0**-43 * scale
        # a foot next to a vertex makes the Ceva ratios ill-conditioned
        A, B, C = triad.triangle.vertices
        segs = [distance(p, q) for p, q in ((B, triad.D), (triad.D, C), (C, triad.E),
                                            (triad.E, A), (A, triad.F), (triad.F, B))]
        assert ceva_product(triad) == pytest.approx(1, rel=2.0**-46 * max(segs) / min(segs))


@given(triangles)
def test_contact_lengths(T):
    a, b, c = side_lengths(T)
    s = (a + b + c) / 2
    A, B, C = T.to(approx(53)).vertices
    D, E, F_ = contact_points(T, CenterKind.GERGONNE)
    assert distance(B, D) == pytest.approx(s - b, rel=1e-12)
    assert distance(D, C) == pytest.approx(s - c, rel=1e-12)
    assert distance(C, E) == pytest.approx(s - c, rel=1e-12)
    assert distance(A, F_) == pytest.approx(s - a, rel=1e-12)
    D, E, F_ = contact_points(T, CenterKind.NAGEL)
    assert distance(A, F_) == pytest.approx(s - b, rel=1e-12)
    assert distance(D, C) == pytest.approx(s - b, rel=1e-12)
    assert distance(F_, B) == pytest.approx(s - a, rel=1e-12)
    assert distance(C, E) == pytest.approx(s - a, rel=1e-12)
    assert distance(B, D) == pytest.approx(s - c, rel=1e-12)
    assert distance(E, A) == pytest.approx(s - c, rel=1e-12)


@given(triangles)
def test_nagel_lengths_match_coordinates(T):
    a, b, c = side_lengths(T)
    triad = cevian_triad(T, CenterKind.NAGEL)
    measured = [distance(v, f) for v, f in zip(triad.triangle.vertices, triad.feet)]
    assert nagel_cevian_lengths(a, b, c) == pytest.approx(measured, rel=1e-12)


@given(triangles, st.sampled_from([(3, 4), (0, 2), (-5, 12)]), st.sampled_from([F(1, 3), F(7)]))
def test_similarity_maps_centers(T, rotation, lam):
    # rotation by the rational unit vector (u, v)/|.| times lam; |.| is rational for these pairs
    u, v = rotation
    norm = F(math.isqrt(u * u + v * v))
    cos_t, sin_t = F(u) / norm * lam, F(v) / norm * lam

    def image(p):
        return Point(cos_t * p.x - sin_t * p.y, sin_t * p.x + cos_t * p.y)

    S = Triangle(*(image(p) for p in T.vertices))
    for kind in CenterKind:
        try:
            here = center_point(T, kind)
        except Exception:
            continue
        there = center_point(S, kind)
        want = image(Point(F(here.x), F(here.y)))
        tol = 2.0**-40 * 16 * float(lam)  # circumcenters of flat obtuse triangles lose a few bits
        assert abs(there.x - float(want.x)) <= tol and abs(there.y - float(want.y)) <= tol
