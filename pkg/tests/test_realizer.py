from itertools import combinations
from math import sqrt

import pytest

from pentagons.constructions import parabolic, pinwheel
from pentagons.geom import count_convex_kgons, signotope_of
from pentagons.realizer import RealizerConfig, Status, exact_margins, realize, to_svg
from pentagons.signotope import InconsistentAssignment, SignotopeAssignment


def _check(a, r):
    assert r.status is Status.REALIZED
    s = r.points
    xs = [p.x for p in s.points]
    assert all(x < y for x, y in zip(xs, xs[1:]))
    assert signotope_of(s) == a
    dmin = min(sqrt(float((p.x - q.x) ** 2 + (p.y - q.y) ** 2)) for p, q in combinations(s.points, 2))
    assert r.achieved_margin <= dmin
    assert r.min_orientation_slack > 0


def test_parabolic_8():
    a = signotope_of(parabolic(8))
    _check(a, realize(a))


def test_pinwheel_2_has_no_pentagons():
    a = signotope_of(pinwheel(2))
    r = realize(a)
    _check(a, r)
    assert count_convex_kgons(r.points, 5) == 0


def test_rejects_inconsistent():
    bad = SignotopeAssignment.from_mapping(4, {(1, 2, 3): False, (1, 2, 4): True, (1, 3, 4): True, (2, 3, 4): False})
    with pytest.raises(InconsistentAssignment):
        realize(bad)


def test_deterministic_under_seed():
    a = signotope_of(parabolic(7))
    r1, r2 = realize(a, RealizerConfig(seed=4)), realize(a, RealizerConfig(seed=4))
    assert r1.points == r2.points


def test_tiny_budget_reports_not_found():
    a = signotope_of(parabolic(10))
    r = realize(a, RealizerConfig(restarts=1, max_iters=5))
    assert r.status is Status.NOT_FOUND and r.points is None


def test_trivial_sizes():
    for n in range(3):
        assert realize(SignotopeAssignment.constant(n)).status is Status.REALIZED


def test_config_validation():
    with pytest.raises(ValueError):
        RealizerConfig(epsilon=0)
    with pytest.raises(ValueError):
        RealizerConfig(step_init=1e-5, step_min=1e-4)


def test_margins_and_svg():
    s = parabolic(6)
    z, slack = exact_margins(s, signotope_of(s))
    assert z > 0 and slack > 0
    svg = to_svg(s, [(1, 2)])
    assert svg.startswith("<svg") and svg.count("<circle") == 6 and "<line" in svg
