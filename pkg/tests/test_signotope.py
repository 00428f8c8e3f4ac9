from itertools import combinations, product
from math import comb

import pytest

from pentagons.constructions import parabolic, pinwheel
from pentagons.geom import signotope_of
from pentagons.signotope import (
    ConvexCase,
    InconsistentAssignment,
    SignotopeAssignment,
    check_axioms,
    convex_case,
    count_convex_pentagons,
    count_convex_unchecked,
    falsified_pentagon_clauses,
    triple_rank,
    triples,
)


def consistent_n5():
    out = []
    for bits in product([False, True], repeat=10):
        a = SignotopeAssignment(5, bits)
        if not check_axioms(a):
            out.append(a)
    return out


N5 = consistent_n5()


def test_rank_is_bijection():
    for n in (3, 6, 9):
        ranks = [triple_rank(n, *t) for t in triples(n)]
        assert ranks == list(range(comb(n, 3)))


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        SignotopeAssignment(5, (True,) * 9)


def test_text_roundtrip():
    a = signotope_of(parabolic(7))
    assert SignotopeAssignment.from_text(a.to_text()) == a
    assert SignotopeAssignment.from_text("3\n−\n").values == (False,)
    with pytest.raises(ValueError):
        SignotopeAssignment.from_text("4\n+-+\n")


def test_all_true_is_consistent():
    assert check_axioms(SignotopeAssignment.constant(5)) == []


def test_minimal_inconsistent_quadruple():
    # sigma(123)=F, sigma(234)=F, sigma(134)=T: forbidden by the implication
    # -s(abc) & -s(bcd) -> -s(acd). The same pattern also falsifies the
    # clause -s(abd) | s(abc) | ... of the third pair, hence two violations.
    a = SignotopeAssignment.from_mapping(4, {(1, 2, 3): False, (1, 2, 4): True, (1, 3, 4): True, (2, 3, 4): False})
    v = check_axioms(a)
    assert ((1, 2, 3, 4), 2, 1) in [(x.quadruple, x.axiom_id, x.conjunct) for x in v]
    assert len(v) == 2


def test_every_bad_quadruple_pattern_violates_two_clauses():
    bad = [check_axioms(SignotopeAssignment(4, bits)) for bits in product([False, True], repeat=4)]
    assert sorted(len(v) for v in bad if v) == [2] * 8


def test_consistent_n5_count():
    # signotopes on 5 elements: this is the number of simple arrangement classes
    assert len(N5) == 62


def test_realizable_sets_are_consistent():
    assert check_axioms(signotope_of(pinwheel(2))) == []


def test_example_pentagon_cases(convex_example, nonconvex_example):
    a = SignotopeAssignment.from_text(convex_example)
    assert check_axioms(a) == []
    assert convex_case(a, (1, 2, 3, 4, 5)) is ConvexCase.III
    b = SignotopeAssignment.from_text(nonconvex_example)
    assert convex_case(b, (1, 2, 3, 4, 5)) is None


def test_all_true_case_one():
    a = SignotopeAssignment.constant(7)
    assert all(convex_case(a, t) is ConvexCase.I for t in combinations(range(1, 8), 5))
    assert count_convex_pentagons(SignotopeAssignment.constant(6)) == 6


def test_counts_of_constructions():
    assert count_convex_pentagons(signotope_of(parabolic(10))) == 2
    assert count_convex_pentagons(signotope_of(pinwheel(3))) == 12


def test_count_rejects_inconsistent():
    bad = SignotopeAssignment.from_mapping(4, {(1, 2, 3): False, (1, 2, 4): True, (1, 3, 4): True, (2, 3, 4): False})
    with pytest.raises(InconsistentAssignment) as exc:
        count_convex_pentagons(bad)
    assert exc.value.violations
    assert count_convex_unchecked(bad) == 0


def _matching_cases(a):
    s = a.__getitem__
    t = (1, 2, 3, 4, 5)
    checks = [
        s((1, 2, 3)) == s((2, 3, 4)) == s((3, 4, 5)),
        s((1, 2, 3)) == s((2, 3, 5)) != s((1, 4, 5)),
        s((1, 2, 4)) == s((2, 4, 5)) != s((1, 3, 5)),
        s((1, 2, 5)) != s((1, 3, 4)) and s((1, 3, 4)) == s((3, 4, 5)),
    ]
    assert len(t) == 5
    return sum(checks)


def test_cases_mutually_exclusive_n5():
    assert all(_matching_cases(a) <= 1 for a in N5)


def test_clause_case_duality_n5():
    for a in N5:
        falsified = falsified_pentagon_clauses(a, (1, 2, 3, 4, 5))
        case = convex_case(a, (1, 2, 3, 4, 5))
        assert len(falsified) == (0 if case is None else 1)
        if case is not None:
            assert falsified[0] // 2 + 1 == case.value


def test_inconsistent_case_returns_first_match():
    # inconsistent input matching both Case I and Case IV
    vals = {t: False for t in triples(5)}
    vals[(1, 2, 5)] = True
    a = SignotopeAssignment.from_mapping(5, vals)
    assert check_axioms(a)
    assert falsified_pentagon_clauses(a, (1, 2, 3, 4, 5)) == [0, 7]
    assert convex_case(a, (1, 2, 3, 4, 5)) is ConvexCase.I
