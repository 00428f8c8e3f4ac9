"""Shared helpers: an independent convexity oracle and random point sets."""
from itertools import combinations

import pytest
from hypothesis import assume
from hypothesis import strategies as st


def _det(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _inside(p, a, b, c):
    d1, d2, d3 = _det(a, b, p), _det(b, c, p), _det(c, a, p)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


def convex_position_by_triangles(pts):
    """A general-position set is convex iff no point lies inside a triangle of three others."""
    for p in pts:
        rest = [q for q in pts if q is not p]
        if any(_inside(p, *tri) for tri in combinations(rest, 3)):
            return False
    return True


def brute_force_count(coords, k):
    return sum(convex_position_by_triangles(list(sub)) for sub in combinations(coords, k))


def in_general_position(coords):
    return all(_det(p, q, r) != 0 for p, q, r in combinations(coords, 3))


coord = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def general_position_coords(draw, min_n=3, max_n=10):
    n = draw(st.integers(min_n, max_n))
    xs = draw(st.lists(coord, min_size=n, max_size=n, unique=True))
    ys = draw(st.lists(coord, min_size=n, max_size=n))
    pts = sorted(zip(xs, ys))
    assume(in_general_position(pts))
    return pts


@pytest.fixture
def convex_example():
    return "5\n+++--+--++\n"


@pytest.fixture
def nonconvex_example():
    return "5\n+++++-----\n"

