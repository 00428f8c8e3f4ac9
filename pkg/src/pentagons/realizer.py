"""Find planar points realizing a signotope assignment.

Maximizes the minimum pairwise distance z over points in [0, K]^2 subject to
every triple having the prescribed orientation with margin epsilon and the
points keeping their left-to-right order. Constraints enter as hinge
penalties; the search is random-restart hill climbing with Gaussian moves of
one point at a time and a geometrically shrinking step. Any candidate is
rounded to rationals and checked exactly before it is reported.
"""
from __future__ import annotations

import enum
import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .geom import DegenerateInput, PointSet, signotope_of
from .signotope import InconsistentAssignment, SignotopeAssignment, check_axioms

log = logging.getLogger(__name__)


class Status(enum.Enum):
    REALIZED = "Realized"
    NOT_FOUND = "NotFound"


@dataclass(frozen=True)
class RealizerConfig:
    epsilon: float = 1e-3
    K: float = 10.0
    restarts: int = 50
    max_iters: int = 40_000
    step_init: float = 1.0
    step_min: float = 1e-4
    penalty: float = 1e3
    polish_iters: int = 2_000
    seed: int = 0
    time_limit: float | None = 120.0
    denominator: int = 10**6

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not self.K > 0:
            raise ValueError("K must be positive")
        if not self.step_init > self.step_min > 0:
            raise ValueError("need step_init > step_min > 0")


@dataclass
class RealizationResult:
    status: Status
    points: PointSet | None = None
    achieved_margin: float | None = None
    min_orientation_slack: float | None = None
    restarts_used: int = 0
    iterations: int = 0
    time: float = 0.0


class _Model:
    """Incremental penalty bookkeeping for the constraint system."""

    def __init__(self, a: SignotopeAssignment, cfg: RealizerConfig):
        n = a.n
        self.n = n
        self.cfg = cfg
        trip = np.array(list(combinations(range(n), 3)), dtype=np.int64).reshape(-1, 3)
        self.ti, self.tj, self.tk = trip[:, 0], trip[:, 1], trip[:, 2]
        self.sign = np.where(np.array(a.values, dtype=bool), 1.0, -1.0)
        self.by_point = [np.nonzero((trip == p).any(axis=1))[0] for p in range(n)]

    def slacks(self, x, y, idx=None):
        i, j, k = (self.ti, self.tj, self.tk) if idx is None else (self.ti[idx], self.tj[idx], self.tk[idx])
        s = self.sign if idx is None else self.sign[idx]
        det = (y[k] - y[i]) * (x[j] - x[i]) - (x[k] - x[i]) * (y[j] - y[i])
        return s * det

    def order_pen(self, x):
        return np.maximum(0.0, self.cfg.epsilon - np.diff(x)).sum()


def _min_dist(x, y):
    d = np.hypot(x[:, None] - x[None, :], y[:, None] - y[None, :])
    np.fill_diagonal(d, np.inf)
    return d


def _climb(m: _Model, rng: np.random.Generator, deadline: float | None):
    cfg = m.cfg
    n = m.n
    eps = cfg.epsilon
    x = np.sort(rng.uniform(0, cfg.K, n))
    y = rng.uniform(0, cfg.K, n)
    tri_pen = np.maximum(0.0, eps - m.slacks(x, y))
    d = _min_dist(x, y)
    z = d.min()
    pen = tri_pen.sum() + m.order_pen(x)
    score = z - cfg.penalty * pen
    decay = (cfg.step_min / cfg.step_init) ** (1.0 / cfg.max_iters)
    step = cfg.step_init
    it = 0
    feasible_at = None
    limit = cfg.max_iters
    while it < limit:
        it += 1
        step = max(cfg.step_min, step * decay)
        if deadline is not None and it % 512 == 0 and time.perf_counter() > deadline:
            break
        p = rng.integers(n)
        ox, oy = x[p], y[p]
        nx = min(cfg.K, max(0.0, ox + rng.normal(0.0, step)))
        ny = min(cfg.K, max(0.0, oy + rng.normal(0.0, step)))
        x[p], y[p] = nx, ny
        idx = m.by_point[p]
        new_tri = np.maximum(0.0, eps - m.slacks(x, y, idx))
        lo, hi = max(p - 1, 0), min(p + 2, n)
        new_order = np.maximum(0.0, eps - np.diff(x[lo:hi])).sum()
        x[p], y[p] = ox, oy
        old_order = np.maximum(0.0, eps - np.diff(x[lo:hi])).sum()
        new_pen = pen - tri_pen[idx].sum() + new_tri.sum() - old_order + new_order
        row = np.hypot(x - nx, y - ny)
        row[p] = np.inf
        others = np.delete(np.delete(d, p, axis=0), p, axis=1)
        new_z = min(row.min(), others.min()) if n > 2 else row.min()
        new_score = new_z - cfg.penalty * max(new_pen, 0.0)
        if new_score >= score:
            x[p], y[p] = nx, ny
            tri_pen[idx] = new_tri
            d[p, :] = row
            d[:, p] = row
            pen, z, score = new_pen, new_z, new_score
            if feasible_at is None and pen <= eps * 1e-6:
                pen = np.maximum(0.0, eps - m.slacks(x, y)).sum() + m.order_pen(x)
                if pen <= 0.0:
                    # constraints met; spend a short polish on the distance objective
                    feasible_at = it
                    limit = min(limit, it + cfg.polish_iters)
                    tri_pen[:] = 0.0
                    score = z
    # recompute from scratch to shed accumulated rounding in the running sums
    pen = np.maximum(0.0, eps - m.slacks(x, y)).sum() + m.order_pen(x)
    return x, y, pen <= 0.0, it


def _rationalize(x, y, den: int | None) -> list[tuple[Fraction, Fraction]]:
    if den is None:
        return [(Fraction(float(a)), Fraction(float(b))) for a, b in zip(x, y)]
    return [(Fraction(round(float(a) * den), den), Fraction(round(float(b) * den), den)) for a, b in zip(x, y)]


def _verify(coords, target: SignotopeAssignment) -> PointSet | None:
    xs = [c[0] for c in coords]
    if any(not a < b for a, b in zip(xs, xs[1:])):
        return None
    try:
        s = PointSet(tuple(coords))
        got = signotope_of(s)
    except DegenerateInput:
        return None
    return s if got == target else None


def exact_margins(s: PointSet, target: SignotopeAssignment) -> tuple[float, float]:
    """(lower bound on min pairwise distance, lower bound on min orientation slack)."""
    pts = [(p.x, p.y) for p in s.points]
    d2 = min((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 for p, q in combinations(pts, 2))
    z = math.nextafter(math.sqrt(float(d2)), 0.0)
    slack = None
    for (i, j, k), v in zip(combinations(range(s.n), 3), target.values):
        a, b, c = pts[i], pts[j], pts[k]
        det = (c[1] - a[1]) * (b[0] - a[0]) - (c[0] - a[0]) * (b[1] - a[1])
        sv = det if v else -det
        slack = sv if slack is None or sv < slack else slack
    return z, math.nextafter(float(slack), -math.inf) if slack is not None else math.inf


def realize(a: SignotopeAssignment, cfg: RealizerConfig = RealizerConfig()) -> RealizationResult:
    violations = check_axioms(a)
    if violations:
        raise InconsistentAssignment(violations)
    t0 = time.perf_counter()
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    if a.n < 3:
        # every ordering is trivially realized by points on a convex curve
        pts = PointSet(tuple((i, i * i) for i in range(a.n)))
        return RealizationResult(Status.REALIZED, pts, *_margins_or_none(pts, a), time=time.perf_counter() - t0)
    rng = np.random.default_rng(cfg.seed)
    m = _Model(a, cfg)
    total_iters = 0
    for r in range(cfg.restarts):
        x, y, ok, its = _climb(m, rng, deadline)
        total_iters += its
        if ok:
            for den in (cfg.denominator, None):
                s = _verify(_rationalize(x, y, den), a)
                if s is not None:
                    z, slack = exact_margins(s, a)
                    return RealizationResult(Status.REALIZED, s, z, slack, r + 1, total_iters,
                                             time.perf_counter() - t0)
            log.debug("restart %d: float solution failed exact verification", r)
        if deadline is not None and time.perf_counter() > deadline:
            return RealizationResult(Status.NOT_FOUND, restarts_used=r + 1, iterations=total_iters,
                                     time=time.perf_counter() - t0)
    return RealizationResult(Status.NOT_FOUND, restarts_used=cfg.restarts, iterations=total_iters,
                             time=time.perf_counter() - t0)


def _margins_or_none(s: PointSet, a: SignotopeAssignment):
    if s.n < 2:
        return None, None
    return exact_margins(s, a)


def to_svg(s: PointSet, hull_edges: list[tuple[int, int]] | None = None, size: int = 400) -> str:
    """Plain SVG drawing of the points (and optional edges between 1-based labels)."""
    xs = [float(p.x) for p in s.points]
    ys = [float(p.y) for p in s.points]
    pad = 20
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    sc = (size - 2 * pad) / max(x1 - x0, y1 - y0, 1e-12)

    def tr(x, y):
        return pad + (x - x0) * sc, size - pad - (y - y0) * sc

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for i, j in hull_edges or []:
        (ax, ay), (bx, by) = tr(xs[i - 1], ys[i - 1]), tr(xs[j - 1], ys[j - 1])
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="gray"/>')
    for i, (x, y) in enumerate(zip(xs, ys), start=1):
        px, py = tr(x, y)
        out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="blue"/>')
        out.append(f'<text x="{px + 4:.2f}" y="{py - 4:.2f}" font-size="10">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
