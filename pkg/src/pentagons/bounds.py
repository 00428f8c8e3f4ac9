"""Exact bounds on mu_5(n) and on c_5 = lim mu_5(n) / C(n, 5).

Everything here is integer or Fraction arithmetic; decimals appear only when
a caller formats a result.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

from .constructions import conjectured_mu5

# Exact values of mu_5(n); n <= 8 admits a pentagon-free set.
_KNOWN = {9: 1, 10: 2, 11: 7, 12: 12, 13: 27, 14: 42, 15: 77, 16: 112}


class HypothesisMismatch(ValueError):
    pass


@dataclass
class BoundRecord:
    n: int
    lower: int
    upper: int
    provenance: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper} for n={self.n}")


def known_values() -> dict[int, int]:
    """mu_5(n) for 0 <= n <= 16."""
    table = {n: 0 for n in range(0, 9)}
    table.update(_KNOWN)
    return table


def folklore_lower_bound(k: int, m: int, r: int, n: int) -> int:
    """ceil(r * C(n, k) / C(m, k)): a lower bound on mu_k(n) given mu_k(m) >= r.

    Each m-subset holds at least r convex k-gons and each k-gon lies in
    C(n - k, m - k) of the C(n, m) subsets.
    """
    if not k <= m <= n:
        raise ValueError(f"need k <= m <= n, got k={k}, m={m}, n={n}")
    if r < 0:
        raise ValueError("r must be non-negative")
    return ceil(Fraction(r * comb(n, k), comb(m, k)))


def odd_even_step(h: int, mu_odd: int) -> int:
    """mu_5(2h) from mu_5(2h - 1) when the latter matches the conjectured value."""
    if h <= 5:
        raise ValueError("odd-even step needs h > 5")
    expected = comb(h, 5) + comb(h - 1, 5)
    if mu_odd != expected:
        raise HypothesisMismatch(
            f"mu_5({2 * h - 1}) = {mu_odd} but the step requires C({h},5) + C({h - 1},5) = {expected}"
        )
    # lower bound from the folklore lemma meets the construction's upper bound
    lower = folklore_lower_bound(5, 2 * h - 1, mu_odd, 2 * h)
    upper = conjectured_mu5(2 * h)
    assert lower == upper == 2 * comb(h, 5)
    return upper


def c5_ratio(n: int, mu_value: int) -> Fraction:
    """mu_value / C(n, 5), a lower bound on c_5 when mu_value <= mu_5(n)."""
    if n < 5:
        raise ValueError("c5_ratio needs n >= 5")
    return Fraction(mu_value, comb(n, 5))


def conjectured_ratio(n: int) -> Fraction:
    """2 C(n, 5) / C(2n, 5), the conjectured mu_5(2n) / C(2n, 5)."""
    return Fraction(2 * comb(n, 5), comb(2 * n, 5))


def conjecture_limit() -> Fraction:
    # ratio of leading coefficients: 2 * (n^5 / 5!) / ((2n)^5 / 5!)
    return Fraction(2, 2**5)


def bound_record(n: int, extra: list[tuple[int, int]] | None = None) -> BoundRecord:
    """Best bounds on mu_5(n) from the table, the folklore lemma and the constructions.

    ``extra`` holds additional (m, r) facts mu_5(m) >= r to propagate.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    prov = []
    upper = conjectured_mu5(n)
    prov.append(f"upper {upper}: construction C({n // 2},5)+C({(n + 1) // 2},5)")
    lower = 0
    known = known_values()
    if n in known:
        lower = known[n]
        prov.append(f"lower {lower}: known value mu_5({n})")
        if known[n] < upper:
            upper = known[n]
            prov.append(f"upper {upper}: known value mu_5({n})")
    facts = [(m, r, "known value") for m, r in known.items() if 5 <= m < n]
    facts += [(m, r, "given") for m, r in (extra or [])]
    for m, r, src in facts:
        if m > n:
            continue
        lb = folklore_lower_bound(5, m, r, n) if m >= 5 else 0
        if lb > lower:
            lower = lb
            prov.append(f"lower {lb}: folklore lemma from mu_5({m}) >= {r} ({src})")
    if lower > upper:
        raise ValueError(f"inconsistent facts: lower {lower} > upper {upper} at n={n}")
    return BoundRecord(n, lower, upper, prov)


def bounds_csv(records: list[BoundRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "lower", "upper", "provenance"])
    for r in records:
        w.writerow([r.n, r.lower, r.upper, "; ".join(r.provenance)])
    return buf.getvalue()
