"""Exact planar geometry over rationals.

Coordinates are stored as Fractions. Predicates work on an integer copy of
the point set obtained by clearing denominators; uniform positive scaling
leaves every orientation unchanged, so nothing is lost.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Sequence

from .signotope import SignotopeAssignment, triples


class Orientation(enum.Enum):
    COUNTERCLOCKWISE = 1
    CLOCKWISE = -1
    COLLINEAR = 0


class DegenerateInput(ValueError):
    """Collinear triple or repeated x-coordinate where general position is required."""


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        # floats are taken at their exact binary value
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))


@dataclass(frozen=True)
class PointSet:
    """Points with strictly increasing x; point i (1-based) is the i-th from the left."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p, q in zip(pts, pts[1:]):
            if not p.x < q.x:
                if p.x == q.x:
                    raise DegenerateInput(f"repeated x-coordinate {p.x}")
                raise ValueError("points must be sorted by increasing x")

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence]) -> PointSet:
        """Build from unsorted (x, y) pairs; sorts by x, rejects repeated x."""
        pts = sorted((Point(x, y) for x, y in coords), key=lambda p: p.x)
        return cls(tuple(pts))

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def integer_coords(self) -> list[tuple[int, int]]:
        """Coordinates multiplied by the common denominator."""
        den = 1
        for p in self.points:
            den = lcm(den, p.x.denominator, p.y.denominator)
        return [(int(p.x * den), int(p.y * den)) for p in self.points]

    def to_json(self) -> str:
        data = {"n": self.n, "points": [[_fmt(p.x), _fmt(p.y)] for p in self.points]}
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> PointSet:
        data = json.loads(text)
        pts = [(Fraction(str(x)), Fraction(str(y))) for x, y in data["points"]]
        if "n" in data and data["n"] != len(pts):
            raise ValueError(f"header says n={data['n']} but {len(pts)} points given")
        return cls.from_coords(pts)


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _det(pa, pb, pc):
    return (pc[1] - pa[1]) * (pb[0] - pa[0]) - (pc[0] - pa[0]) * (pb[1] - pa[1])


def orientation(pa: Point, pb: Point, pc: Point) -> Orientation:
    d = _det((pa.x, pa.y), (pb.x, pb.y), (pc.x, pc.y))
    if d > 0:
        return Orientation.COUNTERCLOCKWISE
    if d < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def collinear_triples(s: PointSet) -> Iterator[tuple[int, int, int]]:
    pts = s.integer_coords()
    for i, j, k in combinations(range(s.n), 3):
        if _det(pts[i], pts[j], pts[k]) == 0:
            yield (i + 1, j + 1, k + 1)


def is_general_position(s: PointSet) -> bool:
    return next(collinear_triples(s), None) is None


def _ccw_table(s: PointSet) -> list[list[list[bool]]]:
    """ccw[i][j][k] for 0-based i < j < k; raises on collinear triples."""
    pts = s.integer_coords()
    n = s.n
    table = [[[False] * n for _ in range(n)] for _ in range(n)]
    for i, j, k in combinations(range(n), 3):
        d = _det(pts[i], pts[j], pts[k])
        if d == 0:
            raise DegenerateInput(f"collinear triple {(i + 1, j + 1, k + 1)}")
        table[i][j][k] = d > 0
    return table


def _in_convex_position(idx: Sequence[int], ccw) -> bool:
    # monotone chain over x-sorted indices; all points must survive on a hull chain
    lower: list[int] = []
    upper: list[int] = []
    for p in idx:
        while len(lower) >= 2 and not ccw[lower[-2]][lower[-1]][p]:
            lower.pop()
        lower.append(p)
        while len(upper) >= 2 and ccw[upper[-2]][upper[-1]][p]:
            upper.pop()
        upper.append(p)
    return len(lower) + len(upper) - 2 == len(idx)


def iter_convex_kgons(s: PointSet, k: int) -> Iterator[tuple[int, ...]]:
    """Yield each convex k-subset as a tuple of 1-based labels."""
    if k < 3:
        raise ValueError(f"need k >= 3, got k={k}")
    ccw = _ccw_table(s)
    for idx in combinations(range(s.n), k):
        if _in_convex_position(idx, ccw):
            yield tuple(i + 1 for i in idx)


def count_convex_kgons(s: PointSet, k: int) -> int:
    """Number of k-subsets in convex position, by exhaustive enumeration."""
    return sum(1 for _ in iter_convex_kgons(s, k))


def signotope_of(s: PointSet) -> SignotopeAssignment:
    ccw = _ccw_table(s)
    return SignotopeAssignment(s.n, tuple(ccw[a - 1][b - 1][c - 1] for a, b, c in triples(s.n)))
