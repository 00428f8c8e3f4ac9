"""Pinwheel and parabolic point sets with few convex pentagons."""
from __future__ import annotations

from math import comb

from .geom import DegenerateInput, PointSet, collinear_triples


def conjectured_mu5(n: int) -> int:
    """C(floor(n/2), 5) + C(ceil(n/2), 5)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return comb(n // 2, 5) + comb((n + 1) // 2, 5)


def _checked(coords: list[tuple[int, int]]) -> PointSet:
    s = PointSet.from_coords(coords)
    bad = next(collinear_triples(s), None)
    if bad is not None:
        raise DegenerateInput(f"construction produced collinear triple {bad}")
    return s


def _spokes(k: int) -> list[tuple[int, int]]:
    # the four spokes, all coordinates multiplied by k^3
    k3 = k**3
    pts = []
    for j in range(k):
        bend = j * (k - j)
        pts.append((k3 * (k + j), k3 - bend))
        pts.append((-k3 * (k + j), bend - k3))
        pts.append((bend - k3, k3 * (k + j)))
        pts.append((k3 - bend, -k3 * (k + j)))
    return pts


def pinwheel(k: int) -> PointSet:
    """The 4k-point pinwheel: four slightly bent spokes of k points each.

    Spokes 3 and 4 are near vertical and repeat x-coordinates (j and k - j
    bend equally), so the set is sheared by (x, y) -> (M x + y, M y) with
    M > 2 max|y|. The map has positive determinant, which keeps every
    orientation (hence every convex k-gon count) and only breaks x ties.
    """
    if k < 1:
        raise ValueError("pinwheel needs k >= 1")
    pts = _spokes(k)
    m = 2 * max(abs(y) for _, y in pts) + 1
    return _checked([(m * x + y, m * y) for x, y in pts])


def parabolic(n: int) -> PointSet:
    """floor(n/2) points on an upper convex chain, ceil(n/2) on a lower concave one.

    Coordinates are scaled by n^2; each lower point is shifted right by 1
    so that vertically aligned pairs get distinct x.
    """
    if n < 1:
        raise ValueError("parabolic needs n >= 1")
    n2 = n * n
    top = [(i * n2, 2 * n2 + i * i) for i in range(1, n // 2 + 1)]
    bottom = [(i * n2 + 1, -2 * n2 - i * i) for i in range(1, (n + 1) // 2 + 1)]
    return _checked(top + bottom)
