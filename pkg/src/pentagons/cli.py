"""Command line entry point.

Exit codes: 0 success, 1 malformed input, 2 budget exhausted, 3 internal
verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import bounds as bnd
from .constructions import conjectured_mu5, parabolic, pinwheel
from .encoder import (
    decode_model,
    encode_maxsat,
    encode_sat,
    make_cubes,
    read_model,
    read_wcnf,
    write_dimacs,
    write_icnf,
    write_wcnf,
)
from .geom import PointSet, count_convex_kgons, signotope_of
from .maxsat_bb import DEFAULT_BUDGET, HardClausesUnsatisfiable, solve_exact
from .realizer import RealizerConfig, Status, realize, to_svg
from .signotope import SignotopeAssignment, check_axioms, count_convex_unchecked
from .sls import SlsConfig, portfolio, recount, sls_minimize

log = logging.getLogger("pentagons")

EXIT_INPUT, EXIT_BUDGET, EXIT_MISMATCH = 1, 2, 3


class BudgetExceeded(Exception):
    pass


class VerificationMismatch(Exception):
    pass


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, data: str | bytes) -> None:
    if path is None or path == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        else:
            sys.stdout.write(data)
        return
    if isinstance(data, bytes):
        Path(path).write_bytes(data)
    else:
        Path(path).write_text(data)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- subcommands ----------------------------------------------------------


def cmd_encode(args) -> int:
    if args.wcnf or args.maxsat:
        f = encode_maxsat(args.n, symmetry=args.symmetry)
        data = write_wcnf(f, new_format=args.new_format)
        _write(args.wcnf, data)
        if args.cubes:
            _write_cubes(f, args.n, args.wcnf or "out.wcnf", args)
        if args.wcnf:
            _emit(args, {"n": args.n, "vars": f.num_vars, "hard": len(f.hard), "symmetry": len(f.symmetry),
                         "soft": len(f.soft), "top": f.top, "file": args.wcnf},
                  f"wrote {args.wcnf}: {f.num_vars} vars, {len(f.all_hard)} hard, {len(f.soft)} soft")
        return 0
    f = encode_sat(args.n, with_axioms=not args.no_axioms)
    if args.symmetry:
        from .encoder import symmetry_units
        f.clauses.extend(symmetry_units(args.n))
    _write(args.cnf, write_dimacs(f))
    if args.cnf:
        _emit(args, {"n": args.n, "vars": f.num_vars, "clauses": len(f.clauses), "file": args.cnf},
              f"wrote {args.cnf}: {f.num_vars} vars, {len(f.clauses)} clauses")
    return 0


def _split(args):
    if not args.split:
        return None
    return [tuple(int(x) for x in t.split(",")) for t in args.split]


def _write_cubes(f, n, base: str, args) -> None:
    cubes = make_cubes(n, _split(args))
    stem = base[:-5] if base.endswith(".wcnf") else base
    for i, c in enumerate(cubes):
        Path(f"{stem}.cube{i:03d}.wcnf").write_bytes(write_wcnf(f.restrict(c), new_format=args.new_format))
    if args.icnf:
        Path(args.icnf).write_bytes(write_icnf(f, cubes))


def cmd_cubes(args) -> int:
    f = encode_maxsat(args.n, symmetry=not args.no_symmetry)
    cubes = make_cubes(args.n, _split(args))
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, c in enumerate(cubes):
            (out / f"mu5_{args.n}.cube{i:03d}.wcnf").write_bytes(write_wcnf(f.restrict(c)))
    if args.icnf:
        Path(args.icnf).write_bytes(write_icnf(f, cubes))
    payload = {"n": args.n, "cubes": len(cubes), "literals": [list(c.literals) for c in cubes]}
    if args.solve:

        def run(ic):
            i, c = ic
            return i, solve_exact(f.restrict(c), args.ub_hint, order=args.order, budget=args.budget)

        with ThreadPoolExecutor(max(1, args.jobs)) as ex:
            results = sorted(ex.map(run, enumerate(cubes)))
        optima = [r.optimum for _, r in results]
        if any(not r.optimal for _, r in results):
            raise BudgetExceeded("a cube exhausted its budget")
        payload["optima"] = optima
        payload["optimum"] = min(optima)
        text = "\n".join(f"cube {i}: {o}" for i, o in enumerate(optima)) + f"\nmin {min(optima)}"
    else:
        text = f"{len(cubes)} cubes"
    _emit(args, payload, text)
    return 0


def _construct(args) -> PointSet:
    if args.kind == "pinwheel":
        if args.k is None:
            if args.n is None or args.n % 4:
                raise ValueError("pinwheel needs --k or --n divisible by 4")
            args.k = args.n // 4
        return pinwheel(args.k)
    if args.n is None:
        raise ValueError("parabolic needs --n")
    return parabolic(args.n)


def cmd_construct(args) -> int:
    s = _construct(args)
    _write(args.out, s.to_json() + "\n")
    return 0


def _points(args) -> PointSet:
    return PointSet.from_json(_read(args.points))


def cmd_count(args) -> int:
    s = _points(args)
    c = count_convex_kgons(s, args.k)
    _emit(args, {"n": s.n, "k": args.k, "count": c}, str(c))
    return 0


def cmd_signotope(args) -> int:
    s = _points(args)
    _write(args.out, signotope_of(s).to_text())
    return 0


def cmd_sls(args) -> int:
    target = args.target
    if target is None and args.stop_at_conjecture:
        target = conjectured_mu5(args.n)
    cfg = SlsConfig(seed=args.seed, max_flips=args.max_flips, restart_interval=args.restart_interval,
                    weight_init=args.weight_init, transfer_quantum=args.transfer_quantum,
                    include_axioms=not args.no_axioms, target=target, time_limit=args.time_limit)

    def progress(flips, best):
        print(f"c flips={flips} best={best}", file=sys.stderr, flush=True)

    if args.seeds > 1:
        best, _ = portfolio(args.n, range(args.seed, args.seed + args.seeds), cfg, jobs=args.jobs)
    else:
        best = sls_minimize(args.n, cfg, progress=progress if args.progress else None,
                            progress_every=args.progress_every)
    check = recount(args.n, best.best_assignment, cfg.include_axioms)
    if check != best.best_falsified:
        raise VerificationMismatch(f"recount {check} != reported {best.best_falsified}")
    if args.out:
        Path(args.out).write_text(best.best_assignment.to_text())
    _emit(args, json.loads(best.to_json()), best.to_json())
    return 0


def _verify_model(f, model, optimum) -> None:
    cost = f.cost(model)
    if cost is None or cost != optimum:
        raise VerificationMismatch(f"witness cost {cost} does not match optimum {optimum}")
    if f.n is not None:
        a = decode_model(f.n, model)
        if not check_axioms(a) and count_convex_unchecked(a) != optimum:
            raise VerificationMismatch("decoded witness has a different pentagon count")


def cmd_solve(args) -> int:
    if args.wcnf:
        f = read_wcnf(_read(args.wcnf))
    elif args.n is not None:
        f = encode_maxsat(args.n, symmetry=not args.no_symmetry)
    else:
        raise ValueError("solve needs --n or --wcnf")
    hint = args.ub_hint
    if hint is None and args.hint_conjecture and f.n is not None:
        hint = conjectured_mu5(f.n)
    r = solve_exact(f, hint, order=args.order, budget=args.budget, time_limit=args.time_limit)
    if r.model is not None and args.model_file:
        Path(args.model_file).write_text("v " + " ".join(map(str, r.model)) + " 0\n")
    payload = {"n": f.n, "optimum": r.optimum, "model_file": args.model_file,
               "propagations": r.propagations, "time": round(r.time, 3)}
    if not r.optimal:
        payload.update(lower=r.lower_bound, upper=r.upper_bound)
        _emit(args, payload, f"budget exhausted: optimum in [{r.lower_bound}, {r.upper_bound}]")
        return EXIT_BUDGET
    _verify_model(f, r.model, r.optimum)
    _emit(args, payload, f"optimum {r.optimum}")
    return 0


def cmd_realize(args) -> int:
    a = SignotopeAssignment.from_text(_read(args.signotope))
    cfg = RealizerConfig(epsilon=args.epsilon, K=args.K, restarts=args.restarts, max_iters=args.max_iters,
                         seed=args.seed, time_limit=args.time_limit)
    r = realize(a, cfg)
    payload = {"n": a.n, "status": r.status.value, "restarts": r.restarts_used, "time": round(r.time, 3)}
    if r.status is not Status.REALIZED:
        _emit(args, payload, "NotFound")
        return EXIT_BUDGET
    if signotope_of(r.points) != a:
        raise VerificationMismatch("realization does not reproduce the signotope")
    payload.update(margin=r.achieved_margin, min_slack=r.min_orientation_slack)
    if args.out:
        Path(args.out).write_text(r.points.to_json() + "\n")
    if args.svg:
        Path(args.svg).write_text(to_svg(r.points))
    _emit(args, payload, r.points.to_json() if not args.out else f"Realized (z >= {r.achieved_margin:.6g})")
    return 0


def cmd_bounds(args) -> int:
    extra = []
    for spec in args.from_ or []:
        m, r = spec.split("=")
        extra.append((int(m), int(r)))
    ns = range(args.n_min, args.n + 1) if args.n_min is not None else [args.n]
    records = [bnd.bound_record(n, extra) for n in ns]
    if args.json:
        print(json.dumps([{"n": r.n, "lower": r.lower, "upper": r.upper, "provenance": r.provenance}
                          for r in records], sort_keys=True))
    else:
        sys.stdout.write(bnd.bounds_csv(records))
    return 0


def cmd_verify(args) -> int:
    if args.points:
        s = _points(args)
        a = signotope_of(s)
        geometric = count_convex_kgons(s, 5) if s.n >= 5 else 0
        violations = check_axioms(a)
        if violations:
            raise VerificationMismatch(f"realizable set gives {len(violations)} axiom violations")
        abstract = count_convex_unchecked(a)
        payload = {"n": s.n, "geometric": geometric, "abstract": abstract, "agree": geometric == abstract}
        if geometric != abstract:
            _emit(args, payload, f"MISMATCH geometric={geometric} abstract={abstract}")
            return EXIT_MISMATCH
        _emit(args, payload, f"ok: {geometric} convex pentagons")
        return 0
    if args.signotope:
        a = SignotopeAssignment.from_text(_read(args.signotope))
        violations = check_axioms(a)
        if violations:
            v = violations[0]
            print(f"{len(violations)} axiom violations, first {v.quadruple} axiom {v.axiom_id}.{v.conjunct}",
                  file=sys.stderr)
            return EXIT_INPUT
        abstract = count_convex_unchecked(a)
        falsified = recount(a.n, a, include_axioms=True) if a.n >= 5 else 0
        payload = {"n": a.n, "abstract": abstract, "falsified_clauses": falsified, "agree": abstract == falsified}
        if abstract != falsified:
            _emit(args, payload, f"MISMATCH cases={abstract} clauses={falsified}")
            return EXIT_MISMATCH
        _emit(args, payload, f"ok: {abstract} convex pentagons")
        return 0
    raise ValueError("verify needs --points or --signotope")


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="pentagons", description="Convex pentagon minimization toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", parents=[common], help="emit DIMACS CNF or WCNF")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--symmetry", action="store_true", help="add sigma(1,b,c) units")
    e.add_argument("--no-axioms", action="store_true", help="SAT formula without axiom clauses")
    e.add_argument("--maxsat", action="store_true", help="emit WCNF to stdout")
    e.add_argument("--wcnf", help="WCNF output file")
    e.add_argument("--cnf", help="CNF output file (default stdout)")
    e.add_argument("--cubes", action="store_true", help="also write one WCNF per cube next to --wcnf")
    e.add_argument("--icnf", help="cube list output file")
    e.add_argument("--split", nargs="+", help="custom splitting triples, e.g. 3,4,5 5,6,7")
    e.add_argument("--new-format", action="store_true", help="'h'-prefixed WCNF without p-line")
    e.set_defaults(func=cmd_encode)

    c = sub.add_parser("cubes", parents=[common], help="cube-and-conquer split (and optional solve)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--no-symmetry", action="store_true")
    c.add_argument("--split", nargs="+")
    c.add_argument("--out-dir")
    c.add_argument("--icnf")
    c.add_argument("--solve", action="store_true", help="solve every cube in-process and report the min")
    c.add_argument("--ub-hint", type=int)
    c.add_argument("--order", default="lex", choices=["lex", "colex"])
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_cubes)

    k = sub.add_parser("construct", parents=[common], help="pinwheel or parabolic point set as JSON")
    k.add_argument("--kind", choices=["pinwheel", "parabolic"], required=True)
    k.add_argument("--n", type=int)
    k.add_argument("--k", type=int, help="pinwheel spoke length (n = 4k)")
    k.add_argument("--out", help="output file (default stdout)")
    k.set_defaults(func=cmd_construct)

    ct = sub.add_parser("count", parents=[common], help="count convex k-gons of a point set")
    ct.add_argument("--points", help="point-set JSON (default stdin)")
    ct.add_argument("--k", type=int, default=5)
    ct.set_defaults(func=cmd_count)

    sg = sub.add_parser("signotope", parents=[common], help="signotope of a point set")
    sg.add_argument("--points", help="point-set JSON (default stdin)")
    sg.add_argument("--out")
    sg.set_defaults(func=cmd_signotope)

    s = sub.add_parser("sls", parents=[common], help="local search for few falsified clauses")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--seeds", type=int, default=1, help="portfolio size (seeds seed..seed+k-1)")
    s.add_argument("--max-flips", type=int, default=10_000_000)
    s.add_argument("--restart-interval", type=int, default=100_000)
    s.add_argument("--weight-init", type=int, default=8)
    s.add_argument("--transfer-quantum", type=int, default=2)
    s.add_argument("--no-axioms", action="store_true")
    s.add_argument("--target", type=int, help="stop once this many falsified clauses is reached")
    s.add_argument("--stop-at-conjecture", action="store_true")
    s.add_argument("--time-limit", type=float)
    s.add_argument("--progress", action="store_true", help="print 'c flips=.. best=..' lines to stderr")
    s.add_argument("--progress-every", type=int, default=100_000)
    s.add_argument("--out", help="write the best assignment in signotope format")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sls)

    so = sub.add_parser("solve", parents=[common], help="exact MaxSAT optimum")
    so.add_argument("--n", type=int)
    so.add_argument("--wcnf")
    so.add_argument("--no-symmetry", action="store_true")
    so.add_argument("--ub-hint", type=int)
    so.add_argument("--hint-conjecture", action="store_true", help="use the conjectured value as ub hint")
    so.add_argument("--order", default="lex", choices=["lex", "colex"])
    so.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max propagations")
    so.add_argument("--time-limit", type=float)
    so.add_argument("--model-file")
    so.set_defaults(func=cmd_solve)

    r = sub.add_parser("realize", parents=[common], help="find points for a signotope")
    r.add_argument("--signotope", help="signotope file (default stdin)")
    r.add_argument("--epsilon", type=float, default=1e-3)
    r.add_argument("--K", type=float, default=10.0)
    r.add_argument("--restarts", type=int, default=50)
    r.add_argument("--max-iters", type=int, default=40_000)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--time-limit", type=float, default=120.0)
    r.add_argument("--out", help="point-set JSON output")
    r.add_argument("--svg", help="SVG drawing output")
    r.set_defaults(func=cmd_realize)

    b = sub.add_parser("bounds", parents=[common], help="bounds on mu_5(n) as CSV")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--n-min", type=int, help="emit a table for n-min..n")
    b.add_argument("--from", dest="from_", action="append", metavar="M=R", help="extra fact mu_5(M) >= R")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="cross-check geometric and abstract counts")
    v.add_argument("--points")
    v.add_argument("--signotope")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationMismatch as exc:
        print(f"internal verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, KeyError, OSError, HardClausesUnsatisfiable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
