"""SAT and MaxSAT formulas for pentagon minimization, with DIMACS/WCNF I/O.

Variable numbering: sigma(a, b, c) gets 1 + its lexicographic triple rank,
relaxation variables r(a, b, c, d, e) follow in lexicographic 5-tuple rank.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .signotope import AXIOM_CLAUSES, PENTAGON_CLAUSES, SignotopeAssignment, triple_ranks

Clause = list[int]


class VarMap:
    def __init__(self, n: int, relaxation: bool = False):
        self.n = n
        self.relaxation = relaxation
        self.num_sigma = comb(n, 3)
        self.num_vars = self.num_sigma + (comb(n, 5) if relaxation else 0)
        self._sigma = triple_ranks(n)
        self._relax = _quint_ranks(n) if relaxation else {}

    def sigma(self, a: int, b: int, c: int) -> int:
        return self._sigma[(a, b, c)] + 1

    def relax(self, a: int, b: int, c: int, d: int, e: int) -> int:
        return self.num_sigma + self._relax[(a, b, c, d, e)] + 1


@lru_cache(maxsize=None)
def _quint_ranks(n: int) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(combinations(range(1, n + 1), 5))}


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[Clause]

    def __post_init__(self):
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in cl):
                raise ValueError(f"clause {cl} references a variable outside 1..{self.num_vars}")


@dataclass
class WcnfFormula:
    """Hard clauses, then symmetry units, then cube units; soft units with weight 1.

    ``top`` is the hard-clause weight written to old-style WCNF headers.
    """

    num_vars: int
    hard: list[Clause]
    soft: list[tuple[int, Clause]]
    top: int
    symmetry: list[Clause] = field(default_factory=list)
    cube: list[Clause] = field(default_factory=list)
    n: int | None = None

    @property
    def all_hard(self) -> list[Clause]:
        return self.hard + self.symmetry + self.cube

    @property
    def num_clauses(self) -> int:
        return len(self.hard) + len(self.symmetry) + len(self.cube) + len(self.soft)

    def restrict(self, cube: Cube) -> WcnfFormula:
        """Copy with the cube's literals added as hard units."""
        return WcnfFormula(
            self.num_vars,
            self.hard,
            self.soft,
            self.top,
            symmetry=self.symmetry,
            cube=self.cube + [[lit] for lit in cube.literals],
            n=self.n,
        )

    def cost(self, model: Sequence[int]) -> int | None:
        """Weight of falsified soft clauses, or None if a hard clause is falsified."""
        true = _truth(model, self.num_vars)
        for cl in self.all_hard:
            if not any(true[abs(l)] == (l > 0) for l in cl):
                return None
        return sum(w for w, cl in self.soft if not any(true[abs(l)] == (l > 0) for l in cl))


@dataclass(frozen=True)
class Cube:
    literals: tuple[int, ...]


def _truth(model: Iterable[int], num_vars: int) -> list[bool | None]:
    true: list[bool | None] = [None] * (num_vars + 1)
    for lit in model:
        if lit == 0:
            continue
        if abs(lit) > num_vars:
            raise ValueError(f"literal {lit} out of range 1..{num_vars}")
        true[abs(lit)] = lit > 0
    return true


def axiom_clauses(vm: VarMap) -> list[Clause]:
    out = []
    for quad in combinations(range(1, vm.n + 1), 4):
        for clause in AXIOM_CLAUSES:
            out.append([_lit(vm, quad, pos, pol) for pos, pol in clause])
    return out


def pentagon_clauses(vm: VarMap, relaxed: bool) -> list[Clause]:
    out = []
    for quint in combinations(range(1, vm.n + 1), 5):
        extra = [vm.relax(*quint)] if relaxed else []
        for clause in PENTAGON_CLAUSES:
            out.append([_lit(vm, quint, pos, pol) for pos, pol in clause] + extra)
    return out


def _lit(vm: VarMap, tup, pos, pol) -> int:
    v = vm.sigma(tup[pos[0]], tup[pos[1]], tup[pos[2]])
    return v if pol else -v


def encode_sat(n: int, with_axioms: bool = True) -> CnfFormula:
    if n < 5:
        raise ValueError("n must be at least 5")
    vm = VarMap(n)
    clauses = axiom_clauses(vm) if with_axioms else []
    clauses += pentagon_clauses(vm, relaxed=False)
    return CnfFormula(vm.num_vars, clauses)


def symmetry_units(n: int) -> list[Clause]:
    """Units sigma(1, b, c) for all 1 < b < c <= n."""
    if n < 3:
        raise ValueError("n must be at least 3")
    vm = VarMap(n)
    return [[vm.sigma(1, b, c)] for b, c in combinations(range(2, n + 1), 2)]


def encode_maxsat(n: int, symmetry: bool = True) -> WcnfFormula:
    if n < 5:
        raise ValueError("n must be at least 5")
    vm = VarMap(n, relaxation=True)
    hard = axiom_clauses(vm) + pentagon_clauses(vm, relaxed=True)
    soft = [(1, [-vm.relax(*q)]) for q in combinations(range(1, n + 1), 5)]
    return WcnfFormula(
        vm.num_vars,
        hard,
        soft,
        top=len(soft) + 1,
        symmetry=symmetry_units(n) if symmetry else [],
        n=n,
    )


def splitting_triples(n: int) -> list[tuple[int, int, int]]:
    """(3,4,5), (5,6,7), ... while the triple fits in 1..n."""
    return [(i, i + 1, i + 2) for i in range(3, n - 1, 2)]


def make_cubes(n: int, split: Sequence[tuple[int, int, int]] | None = None) -> list[Cube]:
    """All 2^c sign patterns over the splitting variables.

    Cube i negates variable j iff bit (c - 1 - j) of i is set, so cube 0 is
    all-positive and the order is plain binary counting.
    """
    if n < 5:
        raise ValueError("n must be at least 5")
    vm = VarMap(n)
    split = splitting_triples(n) if split is None else list(split)
    vars_ = [vm.sigma(*t) for t in split]
    return [
        Cube(tuple(-v if neg else v for v, neg in zip(vars_, signs)))
        for signs in product((False, True), repeat=len(vars_))
    ]


def decode_model(n: int, model: Iterable[int]) -> SignotopeAssignment:
    vm = VarMap(n, relaxation=True)
    true = _truth(model, vm.num_vars)
    missing = [v for v in range(1, vm.num_sigma + 1) if true[v] is None]
    if missing:
        raise ValueError(f"model leaves sigma variable {missing[0]} unassigned")
    return SignotopeAssignment(n, tuple(bool(t) for t in true[1 : vm.num_sigma + 1]))


def model_from_assignment(a: SignotopeAssignment) -> list[int]:
    return [i + 1 if v else -(i + 1) for i, v in enumerate(a.values)]


def count_falsified(f: CnfFormula, truth: Sequence[bool]) -> int:
    """Falsified clauses of f under a total assignment (truth[v - 1] for variable v)."""
    return sum(1 for cl in f.clauses if not any(truth[abs(l) - 1] == (l > 0) for l in cl))


# -- file formats ---------------------------------------------------------


def _clause_line(prefix: str, cl: Clause) -> str:
    return prefix + " ".join(map(str, cl)) + " 0\n"


def write_dimacs(f: CnfFormula) -> bytes:
    buf = io.StringIO()
    buf.write(f"p cnf {f.num_vars} {len(f.clauses)}\n")
    for cl in f.clauses:
        buf.write(_clause_line("", cl))
    return buf.getvalue().encode("ascii")


def write_wcnf(f: WcnfFormula, new_format: bool = False) -> bytes:
    buf = io.StringIO()
    if new_format:
        hard_prefix = "h "
    else:
        buf.write(f"p wcnf {f.num_vars} {f.num_clauses} {f.top}\n")
        hard_prefix = f"{f.top} "
    for cl in f.all_hard:
        buf.write(_clause_line(hard_prefix, cl))
    for w, cl in f.soft:
        buf.write(_clause_line(f"{w} ", cl))
    return buf.getvalue().encode("ascii")


def write_icnf(f: CnfFormula | WcnfFormula, cubes: Sequence[Cube]) -> bytes:
    """Cube list, one "a <lits> 0" line per cube."""
    return "".join(_clause_line("a ", list(c.literals)) for c in cubes).encode("ascii")


def read_dimacs(data: bytes | str) -> CnfFormula:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    num_vars = None
    clauses: list[Clause] = []
    cur: Clause = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if parts[1] != "cnf":
                raise ValueError(f"not a cnf header: {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if num_vars is None:
        raise ValueError("missing 'p cnf' header")
    return CnfFormula(num_vars, clauses)


def read_wcnf(data: bytes | str) -> WcnfFormula:
    """Parse old-style ("p wcnf" with top) or new-style ("h"-prefixed) WCNF."""
    text = data.decode("ascii") if isinstance(data, bytes) else data
    top = None
    declared_vars = None
    hard: list[Clause] = []
    soft: list[tuple[int, Clause]] = []
    max_var = 0
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if parts[1] != "wcnf":
                raise ValueError(f"not a wcnf header: {line!r}")
            declared_vars = int(parts[2])
            top = int(parts[4]) if len(parts) > 4 else None
            continue
        if parts[-1] != "0":
            raise ValueError(f"clause line not terminated by 0: {line!r}")
        lits = [int(t) for t in parts[1:-1]]
        if lits:
            max_var = max(max_var, max(abs(l) for l in lits))
        if parts[0] == "h" or (top is not None and int(parts[0]) >= top):
            hard.append(lits)
        else:
            soft.append((int(parts[0]), lits))
    num_vars = declared_vars if declared_vars is not None else max_var
    if top is None:
        top = sum(w for w, _ in soft) + 1
    return WcnfFormula(num_vars, hard, soft, top, n=_infer_n(num_vars))


def _infer_n(num_vars: int) -> int | None:
    for n in range(5, 200):
        total = comb(n, 3) + comb(n, 5)
        if total == num_vars:
            return n
        if total > num_vars:
            break
    return None


def read_model(text: str) -> list[int]:
    """Literals from a solver output or a bare literal line.

    Accepts "v"-lines with integer literals, the compact "v 0101..." bitstring
    form, or plain whitespace-separated literals; other lines are ignored.
    """
    lits: list[int] = []
    v_lines = [ln[1:].split() for ln in text.splitlines() if ln.startswith("v")]
    rows = v_lines if v_lines else [
        ln.split() for ln in text.splitlines() if ln.strip() and ln.strip()[0] in "-0123456789"
    ]
    for toks in rows:
        if len(toks) == 1 and len(toks[0]) > 1 and set(toks[0]) <= {"0", "1"}:
            lits.extend(i + 1 if ch == "1" else -(i + 1) for i, ch in enumerate(toks[0]))
            continue
        lits.extend(int(t) for t in toks if t != "0")
    return lits
