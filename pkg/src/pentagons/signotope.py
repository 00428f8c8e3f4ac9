"""Signotope assignments: triple orientations of a left-to-right labeled point set.

Points are labeled 1..n. Every sorted triple (a, b, c) carries one boolean,
True meaning counterclockwise. Triples are stored in lexicographic rank order,
the same order the encoder uses for variable numbering.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

# Axiom clauses over a sorted 4-tuple (a, b, c, d) = positions 0..3.
# Each literal is (positions of the triple, polarity). Ordered by axiom,
# then conjunct, so AXIOM_CLAUSES[2 * (axiom - 1) + (conj - 1)].
AXIOM_CLAUSES: tuple[tuple[tuple[tuple[int, int, int], bool], ...], ...] = (
    (((0, 1, 2), True), ((0, 1, 3), False), ((0, 2, 3), True)),
    (((0, 1, 2), False), ((0, 1, 3), True), ((0, 2, 3), False)),
    (((0, 1, 2), True), ((0, 2, 3), False), ((1, 2, 3), True)),
    (((0, 1, 2), False), ((0, 2, 3), True), ((1, 2, 3), False)),
    (((0, 1, 2), True), ((0, 1, 3), False), ((1, 2, 3), True)),
    (((0, 1, 2), False), ((0, 1, 3), True), ((1, 2, 3), False)),
    (((0, 1, 3), True), ((0, 2, 3), False), ((1, 2, 3), True)),
    (((0, 1, 3), False), ((0, 2, 3), True), ((1, 2, 3), False)),
)

# Convexity clauses over a sorted 5-tuple (a, b, c, d, e) = positions 0..4.
# Clause 2i and 2i+1 are the two orientations of case i+1 (I..IV); a convex
# pentagon of that case falsifies exactly one of them.
PENTAGON_CLAUSES: tuple[tuple[tuple[tuple[int, int, int], bool], ...], ...] = (
    (((0, 1, 2), True), ((1, 2, 3), True), ((2, 3, 4), True)),
    (((0, 1, 2), False), ((1, 2, 3), False), ((2, 3, 4), False)),
    (((0, 1, 2), True), ((1, 2, 4), True), ((0, 3, 4), False)),
    (((0, 1, 2), False), ((1, 2, 4), False), ((0, 3, 4), True)),
    (((0, 1, 3), True), ((1, 3, 4), True), ((0, 2, 4), False)),
    (((0, 1, 3), False), ((1, 3, 4), False), ((0, 2, 4), True)),
    (((0, 1, 4), True), ((0, 2, 3), False), ((2, 3, 4), False)),
    (((0, 1, 4), False), ((0, 2, 3), True), ((2, 3, 4), True)),
)


class ConvexCase(enum.Enum):
    I = 1
    II = 2
    III = 3
    IV = 4


class InconsistentAssignment(ValueError):
    """Raised when an operation requires an axiom-consistent assignment."""

    def __init__(self, violations: list[AxiomViolation]):
        self.violations = violations
        first = violations[0]
        super().__init__(
            f"{len(violations)} axiom clause(s) violated, first at quadruple "
            f"{first.quadruple} (axiom {first.axiom_id}, conjunct {first.conjunct})"
        )


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """All sorted 1-based triples of 1..n in lexicographic order."""
    return tuple(combinations(range(1, n + 1), 3))


@lru_cache(maxsize=None)
def triple_ranks(n: int) -> dict[tuple[int, int, int], int]:
    """Map sorted triple -> 0-based lexicographic rank."""
    return {t: i for i, t in enumerate(triples(n))}


def triple_rank(n: int, a: int, b: int, c: int) -> int:
    return triple_ranks(n)[(a, b, c)]


@dataclass(frozen=True)
class AxiomViolation:
    quadruple: tuple[int, int, int, int]
    axiom_id: int
    conjunct: int


@dataclass(frozen=True)
class SignotopeAssignment:
    """One orientation per sorted triple, in lexicographic rank order."""

    n: int
    values: tuple[bool, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        expected = comb(self.n, 3)
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} triple values for n={self.n}, got {len(self.values)}")

    @classmethod
    def from_values(cls, n: int, values: Iterable) -> SignotopeAssignment:
        return cls(n, tuple(bool(v) for v in values))

    @classmethod
    def constant(cls, n: int, value: bool = True) -> SignotopeAssignment:
        return cls(n, (bool(value),) * comb(n, 3))

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[tuple[int, int, int], bool]) -> SignotopeAssignment:
        missing = [t for t in triples(n) if t not in mapping]
        if missing:
            raise ValueError(f"no value for triple {missing[0]}")
        return cls(n, tuple(bool(mapping[t]) for t in triples(n)))

    def __getitem__(self, abc: tuple[int, int, int]) -> bool:
        return self.values[triple_ranks(self.n)[abc]]

    def as_dict(self) -> dict[tuple[int, int, int], bool]:
        return dict(zip(triples(self.n), self.values))

    def to_text(self) -> str:
        return f"{self.n}\n{''.join('+' if v else '-' for v in self.values)}\n"

    @classmethod
    def from_text(cls, text: str) -> SignotopeAssignment:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty signotope file")
        n = int(lines[0])
        body = "".join(lines[1:])
        # accept the unicode minus as well as ASCII
        body = body.replace("−", "-")
        if set(body) - {"+", "-"}:
            raise ValueError("signotope body must consist of '+' and '-' only")
        if len(body) != comb(n, 3):
            raise ValueError(f"expected {comb(n, 3)} signs for n={n}, got {len(body)}")
        return cls(n, tuple(ch == "+" for ch in body))


def _clause_false(values, ranks, tup, clause) -> bool:
    for pos, pol in clause:
        if values[ranks[(tup[pos[0]], tup[pos[1]], tup[pos[2]])]] == pol:
            return False
    return True


def check_axioms(a: SignotopeAssignment) -> list[AxiomViolation]:
    """Every violated axiom clause over all sorted quadruples."""
    ranks = triple_ranks(a.n)
    vals = a.values
    out = []
    for quad in combinations(range(1, a.n + 1), 4):
        for idx, clause in enumerate(AXIOM_CLAUSES):
            if _clause_false(vals, ranks, quad, clause):
                out.append(AxiomViolation(quad, idx // 2 + 1, idx % 2 + 1))
    return out


def is_consistent(a: SignotopeAssignment) -> bool:
    ranks = triple_ranks(a.n)
    vals = a.values
    for quad in combinations(range(1, a.n + 1), 4):
        for clause in AXIOM_CLAUSES:
            if _clause_false(vals, ranks, quad, clause):
                return False
    return True


def falsified_pentagon_clauses(a: SignotopeAssignment, t: Sequence[int]) -> list[int]:
    """Indices 0..7 of the convexity clauses falsified on the 5-tuple t."""
    ranks = triple_ranks(a.n)
    return [i for i, cl in enumerate(PENTAGON_CLAUSES) if _clause_false(a.values, ranks, tuple(t), cl)]


def convex_case(a: SignotopeAssignment, t: Sequence[int]) -> ConvexCase | None:
    """Which of the four convex configurations the 5-tuple t is in, if any.

    On inconsistent assignments more than one case can match; the first in
    order I..IV is returned.
    """
    a_, b, c, d, e = t
    if not (1 <= a_ < b < c < d < e <= a.n):
        raise ValueError(f"5-tuple must be strictly increasing within 1..{a.n}: {tuple(t)}")
    s = a.__getitem__
    if s((a_, b, c)) == s((b, c, d)) == s((c, d, e)):
        return ConvexCase.I
    if s((a_, b, c)) == s((b, c, e)) == (not s((a_, d, e))):
        return ConvexCase.II
    if s((a_, b, d)) == s((b, d, e)) == (not s((a_, c, e))):
        return ConvexCase.III
    if s((a_, b, e)) == (not s((a_, c, d))) == (not s((c, d, e))):
        return ConvexCase.IV
    return None


def _count_convex(n: int, vals: Sequence[bool]) -> int:
    ranks = triple_ranks(n)
    count = 0
    for a, b, c, d, e in combinations(range(1, n + 1), 5):
        abc = vals[ranks[(a, b, c)]]
        cde = vals[ranks[(c, d, e)]]
        if abc == vals[ranks[(b, c, d)]] == cde:
            count += 1
        elif abc == vals[ranks[(b, c, e)]] != vals[ranks[(a, d, e)]]:
            count += 1
        elif vals[ranks[(a, b, d)]] == vals[ranks[(b, d, e)]] != vals[ranks[(a, c, e)]]:
            count += 1
        elif vals[ranks[(a, b, e)]] != vals[ranks[(a, c, d)]] and cde == vals[ranks[(a, c, d)]]:
            count += 1
    return count


def count_convex_pentagons(a: SignotopeAssignment) -> int:
    """Number of 5-tuples in convex position (Cases I-IV).

    Raises InconsistentAssignment if any axiom clause is violated.
    """
    violations = check_axioms(a)
    if violations:
        raise InconsistentAssignment(violations)
    return _count_convex(a.n, a.values)


def count_convex_unchecked(a: SignotopeAssignment) -> int:
    """Case I-IV count without the axiom precondition."""
    return _count_convex(a.n, a.values)
