from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_count, general_position_coords
from pentagons.constructions import parabolic, pinwheel
from pentagons.geom import (
    DegenerateInput,
    Orientation,
    Point,
    PointSet,
    count_convex_kgons,
    is_general_position,
    orientation,
    signotope_of,
)
from pentagons.signotope import check_axioms, count_convex_pentagons


def P(x, y):
    return Point(x, y)


def test_orientation_examples():
    assert orientation(P(0, 0), P(1, 0), P(2, 1)) is Orientation.COUNTERCLOCKWISE
    assert orientation(P(0, 0), P(1, 1), P(2, 2)) is Orientation.COLLINEAR
    assert orientation(P(0, 0), P(1, 1), P(2, 0)) is Orientation.CLOCKWISE


def test_points_are_exact():
    p = Point(Fraction(1, 3), 2)
    assert isinstance(p.x, Fraction) and isinstance(p.y, Fraction)


def test_general_position_examples():
    assert not is_general_position(PointSet.from_coords([(0, 0), (1, 1), (2, 2)]))
    assert is_general_position(parabolic(12))
    assert is_general_position(PointSet.from_coords([(0, 0), (1, 2)]))


def test_repeated_x_rejected():
    with pytest.raises(DegenerateInput):
        PointSet.from_coords([(0, 0), (0, 1), (2, 2)])


def test_regular_hexagon():
    # rational points on the unit circle, in general position
    hexagon = [(1, 0), (Fraction(3, 5), Fraction(4, 5)), (Fraction(-3, 5), Fraction(4, 5)),
               (-1, Fraction(1, 100)), (Fraction(-4, 5), Fraction(-3, 5)), (Fraction(5, 13), Fraction(-12, 13))]
    s = PointSet.from_coords(hexagon)
    assert is_general_position(s)
    assert count_convex_kgons(s, 5) == 6


def test_counts_on_constructions():
    assert count_convex_kgons(parabolic(12), 5) == 12
    assert count_convex_kgons(pinwheel(3), 5) == 12


def test_collinear_rejected_by_count_and_signotope():
    s = PointSet.from_coords([(0, 0), (1, 1), (2, 2), (3, 0), (4, 5)])
    with pytest.raises(DegenerateInput):
        count_convex_kgons(s, 5)
    with pytest.raises(DegenerateInput, match=r"\(1, 2, 3\)"):
        signotope_of(s)


def test_signotope_examples():
    assert signotope_of(PointSet.from_coords([(0, 0), (1, 0), (2, 1)])).values == (True,)
    assert signotope_of(PointSet.from_coords([(0, 0), (1, 2), (2, 1)])).values == (False,)
    assert check_axioms(signotope_of(parabolic(6))) == []


def test_json_roundtrip():
    s = PointSet.from_coords([(Fraction(1, 3), -2), (2, Fraction(7, 9)), (5, 1)])
    assert PointSet.from_json(s.to_json()) == s


@settings(max_examples=60, deadline=None)
@given(general_position_coords(max_n=9), st.integers(1, 50), st.integers(-30, 30), st.integers(-30, 30))
def test_orientation_invariances(pts, scale, dx, dy):
    s = PointSet.from_coords(pts)
    moved = PointSet.from_coords([(x * scale + dx, y * scale + dy) for x, y in pts])
    assert signotope_of(moved) == signotope_of(s)
    a, b, c = (Point(*q) for q in pts[:3])
    assert orientation(a, b, c).value == -orientation(b, a, c).value == orientation(b, c, a).value


@settings(max_examples=40, deadline=None)
@given(general_position_coords(min_n=4, max_n=8), st.integers(4, 6))
def test_count_matches_triangle_oracle(pts, k):
    assert count_convex_kgons(PointSet.from_coords(pts), k) == brute_force_count(pts, k)


@settings(max_examples=40, deadline=None)
@given(general_position_coords(min_n=5, max_n=10))
def test_geometric_and_abstract_counts_agree(pts):
    s = PointSet.from_coords(pts)
    assert count_convex_pentagons(signotope_of(s)) == count_convex_kgons(s, 5)
