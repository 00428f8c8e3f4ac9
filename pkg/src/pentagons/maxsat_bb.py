"""Exact branch-and-bound MaxSAT for the pentagon formulas.

Depth-first search over the variables in a fixed order with counter-based
unit propagation on the hard clauses. The lower bound is the weight of soft
clauses already falsified under the partial assignment; a node is pruned
once it reaches the incumbent. When a soft clause could no longer be
falsified without reaching the incumbent it is propagated like a hard one.

The search loop is compiled with numba. All of its state lives in arrays so
it can stop after a slice of work, hand control back to Python (budget and
time checks), and resume where it left off.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations

import numba
import numpy as np

from .encoder import VarMap, WcnfFormula

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9

# indices into the scalar state vector
_COST, _UB, _LEVEL, _TRAIL, _PROPS, _NODES, _STATUS, _SOLS, _PHASE = range(9)
# status codes
RUNNING, OPTIMAL, HARD_UNSAT, PAUSED = 0, 1, 2, 3


class HardClausesUnsatisfiable(RuntimeError):
    pass


@dataclass
class SolveResult:
    optimum: int | None
    model: list[int] | None
    optimal: bool
    lower_bound: int
    upper_bound: int | None
    propagations: int
    nodes: int
    time: float
    solutions: int = 0
    stats: dict = field(default_factory=dict)


class _Compiled:
    """Flat arrays describing the formula, in the layout the kernel expects."""

    def __init__(self, f: WcnfFormula, order: list[int]):
        hard = f.all_hard
        clauses = [sorted(set(cl)) for cl in hard] + [sorted(set(cl)) for _, cl in f.soft]
        for cl in clauses:
            if any(-l in cl for l in cl):
                raise ValueError(f"tautological clause {cl}")
        nv = f.num_vars
        nc = len(clauses)
        weights = np.zeros(nc, dtype=np.int64)
        weights[: len(hard)] = -1
        for i, (w, _) in enumerate(f.soft):
            if w <= 0:
                raise ValueError("soft weights must be positive")
            weights[len(hard) + i] = w
        start = np.zeros(nc + 1, dtype=np.int32)
        for i, cl in enumerate(clauses):
            start[i + 1] = start[i] + len(cl)
        lits = np.zeros(start[-1], dtype=np.int32)
        occ_lists: list[list[int]] = [[] for _ in range(2 * nv + 2)]
        for i, cl in enumerate(clauses):
            for j, l in enumerate(cl):
                code = _code(l)
                lits[start[i] + j] = code
                occ_lists[code].append(i)
        occ_start = np.zeros(2 * nv + 3, dtype=np.int32)
        for code in range(2 * nv + 2):
            occ_start[code + 1] = occ_start[code] + len(occ_lists[code])
        occ = np.array([c for lst in occ_lists for c in lst], dtype=np.int32)

        soft_neg = set()
        soft_pos = set()
        for _, cl in f.soft:
            for l in cl:
                (soft_pos if l > 0 else soft_neg).add(abs(l))
        seen = set(order)
        full_order = list(order) + [v for v in range(1, nv + 1) if v not in seen]
        phase = np.ones(nv + 1, dtype=np.int8)
        for v in soft_neg - soft_pos:
            phase[v] = 0

        self.num_vars = nv
        self.num_hard = len(hard)
        self.lits = lits
        self.start = start
        self.weights = weights
        self.occ = occ
        self.occ_start = occ_start
        self.order = np.array(full_order, dtype=np.int32)
        self.phase = phase
        self.soft_ids = np.arange(len(hard), nc, dtype=np.int32)


def _code(lit: int) -> int:
    return 2 * lit if lit > 0 else 2 * (-lit) + 1


@numba.njit(cache=True)
def _assign(code, val, nsat, nfalse, start, weights, occ, occ_start, trail, st, pending, npend):
    """Make literal `code` true and update clause counters.

    Returns (conflict flag, new pending size). Counters are always fully
    updated so that undo stays symmetric even when a conflict is found.
    """
    v = code >> 1
    val[v] = 1 - (code & 1)
    trail[st[_TRAIL]] = code
    st[_TRAIL] += 1
    st[_PROPS] += 1
    conflict = False
    for k in range(occ_start[code], occ_start[code + 1]):
        nsat[occ[k]] += 1
    neg = code ^ 1
    for k in range(occ_start[neg], occ_start[neg + 1]):
        c = occ[k]
        nfalse[c] += 1
        if nsat[c] == 0:
            size = start[c + 1] - start[c]
            if nfalse[c] == size:
                if weights[c] < 0:
                    conflict = True
                else:
                    st[_COST] += weights[c]
            elif nfalse[c] == size - 1:
                pending[npend] = c
                npend += 1
    return conflict, npend


@numba.njit(cache=True)
def _undo_to(pos, val, nsat, nfalse, start, weights, occ, occ_start, trail, st):
    while st[_TRAIL] > pos:
        st[_TRAIL] -= 1
        code = trail[st[_TRAIL]]
        neg = code ^ 1
        for k in range(occ_start[neg], occ_start[neg + 1]):
            c = occ[k]
            if nsat[c] == 0 and weights[c] > 0 and nfalse[c] == start[c + 1] - start[c]:
                st[_COST] -= weights[c]
            nfalse[c] -= 1
        for k in range(occ_start[code], occ_start[code + 1]):
            nsat[occ[k]] -= 1
        val[code >> 1] = -1


@numba.njit(cache=True)
def _propagate(conflict, npend, val, nsat, nfalse, lits, start, weights, occ, occ_start,
               trail, st, pending, soft_ids, max_soft_w):
    """Unit propagation to fixpoint. Returns True on conflict or bound reached."""
    while True:
        while npend > 0 and not conflict:
            if st[_COST] >= st[_UB]:
                return True
            npend -= 1
            c = pending[npend]
            if nsat[c] != 0:
                continue
            size = start[c + 1] - start[c]
            if nfalse[c] != size - 1:
                continue
            if weights[c] > 0 and st[_COST] + weights[c] < st[_UB]:
                continue
            for k in range(start[c], start[c + 1]):
                code = lits[k]
                if val[code >> 1] < 0:
                    conflict, npend = _assign(code, val, nsat, nfalse, start, weights, occ,
                                              occ_start, trail, st, pending, npend)
                    break
        if conflict or st[_COST] >= st[_UB]:
            return True
        if st[_COST] + max_soft_w < st[_UB]:
            return False
        # near the incumbent: soft clauses one literal away from falsified act as hard
        for i in range(soft_ids.shape[0]):
            c = soft_ids[i]
            if (nsat[c] == 0 and nfalse[c] == start[c + 1] - start[c] - 1
                    and st[_COST] + weights[c] >= st[_UB]):
                pending[npend] = c
                npend += 1
        if npend == 0:
            return False


@numba.njit(cache=True)
def _search(val, nsat, nfalse, lits, start, weights, occ, occ_start, order, phase,
            trail, lvl_start, lvl_var, lvl_flip, lvl_pos, pending, soft_ids, max_soft_w,
            st, best_model, max_props):
    """Run the depth-first search until done or `max_props` more propagations."""
    stop_at = st[_PROPS] + max_props
    nv = val.shape[0] - 1
    norder = order.shape[0]
    # _PHASE: 0 = need a decision, 1 = need to backtrack
    while True:
        if st[_PROPS] >= stop_at:
            st[_STATUS] = PAUSED
            return
        if st[_PHASE] == 0:
            level = st[_LEVEL]
            p = lvl_pos[level]
            while p < norder and val[order[p]] >= 0:
                p += 1
            if p == norder:
                # complete assignment strictly better than the incumbent
                st[_UB] = st[_COST]
                st[_SOLS] += 1
                for v in range(1, nv + 1):
                    best_model[v] = val[v]
                st[_PHASE] = 1
                continue
            v = order[p]
            level += 1
            st[_LEVEL] = level
            st[_NODES] += 1
            lvl_start[level] = st[_TRAIL]
            lvl_var[level] = v
            lvl_flip[level] = 0
            lvl_pos[level] = p
            code = 2 * v + (1 - phase[v])
            conflict, npend = _assign(code, val, nsat, nfalse, start, weights, occ, occ_start,
                                      trail, st, pending, 0)
            if _propagate(conflict, npend, val, nsat, nfalse, lits, start, weights, occ,
                          occ_start, trail, st, pending, soft_ids, max_soft_w):
                st[_PHASE] = 1
            continue
        # backtrack
        level = st[_LEVEL]
        if level == 0:
            st[_STATUS] = OPTIMAL
            return
        _undo_to(lvl_start[level], val, nsat, nfalse, start, weights, occ, occ_start, trail, st)
        if lvl_flip[level] == 1:
            st[_LEVEL] = level - 1
            continue
        lvl_flip[level] = 1
        v = lvl_var[level]
        code = 2 * v + phase[v]
        conflict, npend = _assign(code, val, nsat, nfalse, start, weights, occ, occ_start,
                                  trail, st, pending, 0)
        if _propagate(conflict, npend, val, nsat, nfalse, lits, start, weights, occ,
                      occ_start, trail, st, pending, soft_ids, max_soft_w):
            st[_PHASE] = 1
        else:
            st[_PHASE] = 0


@numba.njit(cache=True)
def _root(val, nsat, nfalse, lits, start, weights, occ, occ_start, trail, st, pending,
          soft_ids, max_soft_w):
    npend = 0
    conflict = False
    for c in range(start.shape[0] - 1):
        if start[c + 1] - start[c] == 1:
            pending[npend] = c
            npend += 1
    return _propagate(conflict, npend, val, nsat, nfalse, lits, start, weights, occ, occ_start,
                      trail, st, pending, soft_ids, max_soft_w)


def default_order(f: WcnfFormula, order: str = "lex") -> list[int]:
    """Branching order over the sigma variables.

    "lex": lexicographic triple order (variable ids 1, 2, ...).
    "colex": triples sorted by largest point first, so all triples among
    points 1..m are decided before point m + 1 enters.
    """
    if f.n is None or order == "lex":
        return list(range(1, f.num_vars + 1))
    vm = VarMap(f.n)
    if order == "colex":
        trips = sorted(combinations(range(1, f.n + 1), 3), key=lambda t: (t[2], t[1], t[0]))
        return [vm.sigma(*t) for t in trips]
    raise ValueError(f"unknown branching order {order!r}")


def solve_exact(
    f: WcnfFormula,
    ub_hint: int | None = None,
    *,
    order: str | list[int] = "lex",
    budget: int = DEFAULT_BUDGET,
    time_limit: float | None = None,
    slice_props: int = 20_000_000,
    progress=None,
) -> SolveResult:
    """Minimum falsified soft weight over models of the hard clauses.

    ub_hint, when given, must be a true upper bound on the optimum; the
    search then only looks for models of cost <= ub_hint. The returned
    optimum and model are unaffected when the hint is valid.

    If the propagation budget or time limit runs out, the result carries
    optimal=False and the interval [lower_bound, upper_bound].
    """
    t0 = time.perf_counter()
    branch = default_order(f, order) if isinstance(order, str) else list(order)
    comp = _Compiled(f, branch)
    nv = comp.num_vars
    nc = comp.start.shape[0] - 1
    total_soft = int(comp.weights[comp.num_hard :].sum())
    max_soft_w = int(comp.weights[comp.num_hard :].max()) if nc > comp.num_hard else 0

    val = np.full(nv + 1, -1, dtype=np.int8)
    val[0] = 0
    nsat = np.zeros(nc, dtype=np.int32)
    nfalse = np.zeros(nc, dtype=np.int32)
    trail = np.zeros(nv + 1, dtype=np.int32)
    lvl = nv + 2
    lvl_start = np.zeros(lvl, dtype=np.int32)
    lvl_var = np.zeros(lvl, dtype=np.int32)
    lvl_flip = np.zeros(lvl, dtype=np.int8)
    lvl_pos = np.zeros(lvl, dtype=np.int32)
    pending = np.zeros(max(nc, 1) + int(comp.occ.shape[0]), dtype=np.int32)
    best_model = np.full(nv + 1, -1, dtype=np.int8)
    st = np.zeros(9, dtype=np.int64)
    # an incumbent of ub_hint + 1 admits exactly the models of cost <= ub_hint
    st[_UB] = (ub_hint + 1) if ub_hint is not None else total_soft + 1

    args = (val, nsat, nfalse, comp.lits, comp.start, comp.weights, comp.occ, comp.occ_start)
    if _root(*args, trail, st, pending, comp.soft_ids, max_soft_w):
        st[_STATUS] = OPTIMAL
    root_cost = int(st[_COST])

    while st[_STATUS] != OPTIMAL:
        remaining = budget - int(st[_PROPS])
        if remaining <= 0 or (time_limit is not None and time.perf_counter() - t0 > time_limit):
            break
        _search(*args, comp.order, comp.phase, trail, lvl_start, lvl_var, lvl_flip, lvl_pos,
                pending, comp.soft_ids, max_soft_w, st, best_model, min(slice_props, remaining))
        if progress is not None:
            progress(int(st[_PROPS]), int(st[_NODES]), int(st[_UB]), int(st[_SOLS]))
        log.debug("props=%d nodes=%d ub=%d", st[_PROPS], st[_NODES], st[_UB])

    elapsed = time.perf_counter() - t0
    done = st[_STATUS] == OPTIMAL
    found = st[_SOLS] > 0
    model = [v if best_model[v] == 1 else -v for v in range(1, nv + 1)] if found else None
    ub = int(st[_UB]) if found else None
    if done and not found:
        if ub_hint is None:
            raise HardClausesUnsatisfiable("hard clauses are unsatisfiable")
        raise ValueError(f"no model of cost <= ub_hint={ub_hint}; the hint is not an upper bound")
    return SolveResult(
        optimum=ub if done else None,
        model=model,
        optimal=bool(done),
        lower_bound=ub if done else root_cost,
        upper_bound=ub,
        propagations=int(st[_PROPS]),
        nodes=int(st[_NODES]),
        time=elapsed,
        solutions=int(st[_SOLS]),
    )
