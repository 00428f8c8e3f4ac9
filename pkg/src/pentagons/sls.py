"""DDFW-style stochastic local search over the sigma variables.

Minimizes the number of falsified clauses of the pentagon SAT formula.
Clause weights start at ``weight_init``; greedy flips follow the weighted
score, and when no flip improves the weighted cost, weight moves from the
heaviest satisfied clause sharing a variable onto each falsified clause.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field

import numba
import numpy as np

from .encoder import CnfFormula, count_falsified, encode_sat
from .signotope import SignotopeAssignment, check_axioms, count_convex_unchecked

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlsConfig:
    seed: int = 0
    max_flips: int = 10_000_000
    restart_interval: int = 100_000
    weight_init: int = 8
    transfer_quantum: int = 2
    include_axioms: bool = True
    target: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.restart_interval < 1:
            raise ValueError("restart_interval must be >= 1")
        if not self.weight_init >= self.transfer_quantum >= 1:
            raise ValueError("need weight_init >= transfer_quantum >= 1")
        if self.max_flips < 0:
            raise ValueError("max_flips must be non-negative")


@dataclass
class SlsResult:
    n: int
    seed: int
    best_falsified: int
    best_assignment: SignotopeAssignment
    flips_used: int
    restarts: int
    wall_time: float
    axioms_ok: bool = True
    history: list[tuple[int, int]] = field(default_factory=list)
    restart_bests: list[tuple[int, SignotopeAssignment]] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "best": self.best_falsified, "flips": self.flips_used,
                           "restarts": self.restarts, "seed": self.seed})


# -- compiled kernel ----------------------------------------------------------


@numba.njit(cache=True)
def _rand(rng):
    # xorshift64*
    x = rng[0]
    x ^= x >> np.uint64(12)
    x ^= x << np.uint64(25)
    x ^= x >> np.uint64(27)
    rng[0] = x
    return (x * np.uint64(0x2545F4914F6CDD1D)) >> np.uint64(11)


@numba.njit(cache=True)
def _randint(rng, k):
    return np.int64(_rand(rng) % np.uint64(k))


@numba.njit(cache=True)
def _randfloat(rng):
    return np.float64(_rand(rng)) / 9007199254740992.0


@numba.njit(cache=True)
def _setup(assign, rng, lits, start, occ, occ_start, weight, ntrue, crit, make, brk,
           fals, fpos, w_init, randomize):
    nv = assign.shape[0] - 1
    nc = start.shape[0] - 1
    if randomize:
        for v in range(1, nv + 1):
            assign[v] = _randint(rng, 2)
    make[:] = 0
    brk[:] = 0
    nf = 0
    for c in range(nc):
        weight[c] = w_init
        t = 0
        x = 0
        for k in range(start[c], start[c + 1]):
            code = lits[k]
            v = code >> 1
            if assign[v] == 1 - (code & 1):
                t += 1
                x ^= v
        ntrue[c] = t
        crit[c] = x
        if t == 0:
            fpos[c] = nf
            fals[nf] = c
            nf += 1
            for k in range(start[c], start[c + 1]):
                make[lits[k] >> 1] += w_init
        else:
            fpos[c] = -1
            if t == 1:
                brk[x] += w_init
    return nf


@numba.njit(cache=True)
def _flip(v, assign, lits, start, occ, occ_start, weight, ntrue, crit, make, brk, fals, fpos, nf):
    assign[v] = 1 - assign[v]
    for k in range(occ_start[v], occ_start[v + 1]):
        c = occ[k]
        w = weight[c]
        # does the literal of v in c become true?
        now_true = False
        for j in range(start[c], start[c + 1]):
            code = lits[j]
            if code >> 1 == v:
                now_true = assign[v] == 1 - (code & 1)
                break
        if now_true:
            ntrue[c] += 1
            if ntrue[c] == 1:
                # leaves the falsified set
                p = fpos[c]
                last = fals[nf - 1]
                fals[p] = last
                fpos[last] = p
                fpos[c] = -1
                nf -= 1
                for j in range(start[c], start[c + 1]):
                    make[lits[j] >> 1] -= w
                brk[v] += w
            elif ntrue[c] == 2:
                brk[crit[c]] -= w
            crit[c] ^= v
        else:
            ntrue[c] -= 1
            crit[c] ^= v
            if ntrue[c] == 0:
                fpos[c] = nf
                fals[nf] = c
                nf += 1
                for j in range(start[c], start[c + 1]):
                    make[lits[j] >> 1] += w
                brk[v] -= w
            elif ntrue[c] == 1:
                brk[crit[c]] += w
    return nf


@numba.njit(cache=True)
def _transfer(rng, lits, start, occ, occ_start, weight, ntrue, crit, make, brk, fals, nf,
              w_init, quantum, nc):
    for i in range(nf):
        cf = fals[i]
        donor = -1
        best_w = 0
        for j in range(start[cf], start[cf + 1]):
            v = lits[j] >> 1
            for k in range(occ_start[v], occ_start[v + 1]):
                c = occ[k]
                if ntrue[c] > 0 and weight[c] > best_w:
                    best_w = weight[c]
                    donor = c
        if donor < 0 or best_w < w_init:
            # fallback: a random satisfied clause carrying at least the initial weight
            donor = -1
            for _ in range(64):
                c = _randint(rng, nc)
                if ntrue[c] > 0 and weight[c] >= w_init:
                    donor = c
                    break
            if donor < 0:
                continue
        amt = quantum if weight[donor] > w_init else 1
        if weight[donor] <= amt:
            continue
        weight[donor] -= amt
        if ntrue[donor] == 1:
            brk[crit[donor]] -= amt
        weight[cf] += amt
        for j in range(start[cf], start[cf + 1]):
            make[lits[j] >> 1] += amt


@numba.njit(cache=True)
def _run(max_flips, target, assign, best_assign, rng, lits, start, occ, occ_start, weight,
         ntrue, crit, make, brk, fals, fpos, nf, best, w_init, quantum, cand, hist, nhist,
         flips_base):
    """Up to max_flips flips from the current state.

    Returns (flips done, falsified count, segment best, history length).
    """
    nv = assign.shape[0] - 1
    nc = start.shape[0] - 1
    flips = 0
    while flips < max_flips and best > target:
        best_score = 0
        ncand = 0
        nzero = 0
        for v in range(1, nv + 1):
            s = make[v] - brk[v]
            if s > best_score:
                best_score = s
                ncand = 0
            if s == best_score and s > 0:
                cand[ncand] = v
                ncand += 1
        if ncand == 0:
            # sideways moves among variables of falsified clauses with zero score
            for v in range(1, nv + 1):
                if make[v] > 0 and make[v] == brk[v]:
                    cand[nzero] = v
                    nzero += 1
        if ncand > 0:
            v = cand[_randint(rng, ncand)]
        elif nzero > 0 and _randfloat(rng) < 0.15:  # DDFW sideways probability
            v = cand[_randint(rng, nzero)]
        else:
            _transfer(rng, lits, start, occ, occ_start, weight, ntrue, crit, make, brk, fals, nf,
                      w_init, quantum, nc)
            continue
        nf = _flip(v, assign, lits, start, occ, occ_start, weight, ntrue, crit, make, brk,
                   fals, fpos, nf)
        flips += 1
        if nf < best:
            best = nf
            best_assign[:] = assign
            if nhist < hist.shape[0]:
                hist[nhist, 0] = flips_base + flips
                hist[nhist, 1] = nf
                nhist += 1
    return flips, nf, best, nhist


class _State:
    def __init__(self, f: CnfFormula, seed: int):
        nv = f.num_vars
        nc = len(f.clauses)
        start = np.zeros(nc + 1, dtype=np.int64)
        for i, cl in enumerate(f.clauses):
            start[i + 1] = start[i] + len(cl)
        lits = np.zeros(start[-1], dtype=np.int64)
        occ_lists: list[list[int]] = [[] for _ in range(nv + 1)]
        for i, cl in enumerate(f.clauses):
            for j, l in enumerate(cl):
                lits[start[i] + j] = 2 * abs(l) + (l < 0)
                occ_lists[abs(l)].append(i)
        occ_start = np.zeros(nv + 2, dtype=np.int64)
        for v in range(nv + 1):
            occ_start[v + 1] = occ_start[v] + len(occ_lists[v])
        self.lits = lits
        self.start = start
        self.occ = np.array([c for lst in occ_lists for c in lst], dtype=np.int64)
        self.occ_start = occ_start
        self.assign = np.zeros(nv + 1, dtype=np.int64)
        self.best_assign = np.zeros(nv + 1, dtype=np.int64)
        self.weight = np.zeros(nc, dtype=np.int64)
        self.ntrue = np.zeros(nc, dtype=np.int64)
        self.crit = np.zeros(nc, dtype=np.int64)
        self.make = np.zeros(nv + 1, dtype=np.int64)
        self.brk = np.zeros(nv + 1, dtype=np.int64)
        self.fals = np.zeros(nc, dtype=np.int64)
        self.fpos = np.zeros(nc, dtype=np.int64)
        self.cand = np.zeros(nv + 1, dtype=np.int64)
        # splitmix64 the seed so that nearby seeds give unrelated streams
        z = (seed + 0x9E3779B97F4A7C15) % 2**64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2**64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2**64
        z ^= z >> 31
        self.rng = np.array([z or 1], dtype=np.uint64)


def _assignment(n: int, bits: np.ndarray) -> SignotopeAssignment:
    return SignotopeAssignment(n, tuple(bool(b) for b in bits[1:]))


def sls_minimize(n: int, cfg: SlsConfig = SlsConfig(), progress=None,
                 progress_every: int = 100_000) -> SlsResult:
    """Best assignment found by weighted local search on encode_sat(n).

    Deterministic for a given (n, cfg) unless cfg.time_limit cuts the run
    short. ``progress(flips, best)`` is called every ``progress_every`` flips.
    """
    t0 = time.perf_counter()
    f = encode_sat(n, cfg.include_axioms)
    s = _State(f, cfg.seed)
    target = -1 if cfg.target is None else cfg.target
    hist = np.zeros((4096, 2), dtype=np.int64)
    nhist = 0
    global_best = len(f.clauses) + 1
    global_assign = None
    history: list[tuple[int, int]] = []
    restart_bests: list[tuple[int, SignotopeAssignment]] = []
    flips_total = 0
    restarts = 0
    chunk = max(1, min(progress_every, cfg.restart_interval))

    while flips_total < cfg.max_flips and global_best > target:
        nf = _setup(s.assign, s.rng, s.lits, s.start, s.occ, s.occ_start, s.weight, s.ntrue,
                    s.crit, s.make, s.brk, s.fals, s.fpos, cfg.weight_init, True)
        seg_best = nf
        s.best_assign[:] = s.assign
        nhist = 0
        seg_flips = 0
        while seg_flips < cfg.restart_interval and flips_total < cfg.max_flips and seg_best > target:
            budget = min(chunk - (flips_total % chunk), cfg.restart_interval - seg_flips,
                         cfg.max_flips - flips_total)
            done, nf, seg_best, nhist = _run(
                budget, max(target, -1), s.assign, s.best_assign, s.rng, s.lits, s.start, s.occ,
                s.occ_start, s.weight, s.ntrue, s.crit, s.make, s.brk, s.fals, s.fpos, nf,
                seg_best, cfg.weight_init, cfg.transfer_quantum, s.cand, hist, nhist, flips_total)
            seg_flips += done
            flips_total += done
            if done == 0 and seg_best > target:
                # no flip possible at all; cannot happen with non-empty falsified set
                break
            if progress is not None and flips_total % chunk == 0:
                progress(flips_total, min(global_best, seg_best))
            if cfg.time_limit is not None and time.perf_counter() - t0 > cfg.time_limit:
                break
        seg_assign = _assignment(n, s.best_assign)
        restart_bests.append((seg_best, seg_assign))
        for fl, b in hist[:nhist]:
            if b < global_best:
                history.append((int(fl), int(b)))
        if seg_best < global_best:
            global_best = seg_best
            global_assign = seg_assign
            if not history or history[-1][1] != seg_best:
                history.append((flips_total, seg_best))
        restarts += 1
        if cfg.time_limit is not None and time.perf_counter() - t0 > cfg.time_limit:
            break

    if global_assign is None:
        # zero flips requested: report the initial random assignment
        nf = _setup(s.assign, s.rng, s.lits, s.start, s.occ, s.occ_start, s.weight, s.ntrue,
                    s.crit, s.make, s.brk, s.fals, s.fpos, cfg.weight_init, True)
        global_best, global_assign = nf, _assignment(n, s.assign)
        restarts = 1

    axioms_ok = not check_axioms(global_assign) if cfg.include_axioms else False
    return SlsResult(
        n=n,
        seed=cfg.seed,
        best_falsified=int(global_best),
        best_assignment=global_assign,
        flips_used=flips_total,
        restarts=restarts - 1,
        wall_time=time.perf_counter() - t0,
        axioms_ok=axioms_ok,
        history=history,
        restart_bests=restart_bests,
    )


def recount(n: int, a: SignotopeAssignment, include_axioms: bool = True) -> int:
    """Falsified clauses of encode_sat(n, include_axioms) under a, from scratch."""
    return count_falsified(encode_sat(n, include_axioms), a.values)


def portfolio(n: int, seeds, base: SlsConfig = SlsConfig(), jobs: int = 1) -> tuple[SlsResult, list[SlsResult]]:
    """Run one search per seed; return the best result and all results sorted by seed."""
    from concurrent.futures import ThreadPoolExecutor

    cfgs = [SlsConfig(**{**asdict(base), "seed": s}) for s in seeds]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            results = list(ex.map(lambda c: sls_minimize(n, c), cfgs))
    else:
        results = []
        for c in cfgs:
            results.append(sls_minimize(n, c))
            if base.target is not None and results[-1].best_falsified <= base.target:
                break
    results.sort(key=lambda r: r.seed)
    best = min(results, key=lambda r: (r.best_falsified, r.seed))
    return best, results


def harvest(n: int, count: int, base: SlsConfig = SlsConfig(), mode: str = "seeds"):
    """Collect best assignments, one per seed ("seeds") or per restart ("restarts").

    Returns a list of (source, falsified, assignment) where source records
    the seed or the restart index that produced it.
    """
    out = []
    if mode == "seeds":
        for i in range(count):
            r = sls_minimize(n, SlsConfig(**{**asdict(base), "seed": base.seed + i}))
            out.append((("seed", base.seed + i), r.best_falsified, r.best_assignment))
    elif mode == "restarts":
        cfg = SlsConfig(**{**asdict(base), "max_flips": base.restart_interval * count, "target": None})
        r = sls_minimize(n, cfg)
        for i, (b, a) in enumerate(r.restart_bests[:count]):
            out.append((("restart", i), b, a))
    else:
        raise ValueError(f"unknown harvest mode {mode!r}")
    return out


def pentagons_of_best(r: SlsResult) -> int | None:
    """Convex pentagon count of the best assignment, when it satisfies the axioms."""
    return count_convex_unchecked(r.best_assignment) if r.axioms_ok else None
