from math import comb

import pytest

from conftest import brute_force_count
from pentagons.constructions import conjectured_mu5, parabolic, pinwheel
from pentagons.geom import count_convex_kgons, is_general_position


@pytest.mark.parametrize("k, n, count", [(2, 8, 0), (3, 12, 12)])
def test_pinwheel_examples(k, n, count):
    s = pinwheel(k)
    assert s.n == n
    assert count_convex_kgons(s, 5) == count


def test_pinwheel_twenty():
    assert count_convex_kgons(pinwheel(5), 5) == 504


@pytest.mark.parametrize("n, count", [(5, 0), (12, 12), (16, 112)])
def test_parabolic_examples(n, count):
    assert count_convex_kgons(parabolic(n), 5) == count


@pytest.mark.parametrize("n, value", [(17, 182), (20, 504), (9, 1)])
def test_conjectured_values(n, value):
    assert conjectured_mu5(n) == value


def test_conjecture_identities():
    for n in range(1, 40):
        assert conjectured_mu5(2 * n) == 2 * comb(n, 5)
        assert conjectured_mu5(2 * n - 1) == comb(n, 5) + comb(n - 1, 5)


def test_general_position_and_integrality():
    for k in range(1, 7):
        s = pinwheel(k)
        assert is_general_position(s)
        assert all(p.x.denominator == p.y.denominator == 1 for p in s.points)
    for n in range(1, 25):
        assert is_general_position(parabolic(n))


def test_independent_oracle_agrees():
    for s in (pinwheel(3), parabolic(11)):
        pts = [(p.x, p.y) for p in s.points]
        assert brute_force_count(pts, 5) == count_convex_kgons(s, 5)


def test_bad_sizes():
    with pytest.raises(ValueError):
        pinwheel(0)
    with pytest.raises(ValueError):
        parabolic(0)
