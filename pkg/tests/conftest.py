import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cevian_circles.geometry import Point, Triangle, orientation

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

# coordinates on a 2^-10 grid in [-8, 8]
grid = st.integers(-(8 << 10), 8 << 10).map(lambda n: Fraction(n, 1 << 10))
points = st.builds(Point, grid, grid)


def _fat(pts) -> bool:
    """Non-degenerate with every angle comfortably away from 0 and pi."""
    a, b, c = pts
    if orientation(a, b, c) == 0:
        return False
    T = Triangle(a, b, c)
    from cevian_circles.geometry import vertex_angle

    return min(vertex_angle(T, v) for v in "ABC") > 0.1


triangles = st.tuples(points, points, points).filter(_fat).map(lambda pts: Triangle(*pts))


@pytest.fixture
def right_triangle():
    """A=(0,3), B=(0,0), C=(4,0): sides a=4, b=5, c=3."""
    return Triangle(Point(Fraction(0), Fraction(3)), Point(Fraction(0), Fraction(0)), Point(Fraction(4), Fraction(0)))
