"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 solver failure or failed verification.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import appendix
from .bench import SuiteError, error_metric, run_suite, write_tables, write_trace
from .core import crisp_optimum
from .heuristics import ALGORITHMS, default_configs, run_heuristic, with_seed
from .linearize import DEFAULT_RULES, solve_fri_fc
from .lp import LpError
from .problem import FuzzyParams, ProblemFormatError, gen_random, read_problem, write_problem
from .simplify import simplify

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2

# tolerance used by `reproduce` when checking the published Table-1 values
TABLE1_TOL = 5e-4


class InputError(Exception):
    pass


def _vec(x) -> str:
    return "[" + ", ".join(f"{v:.4f}" for v in x) + "]"


def _sets(sets) -> str:
    return "{" + ", ".join(str(j + 1) for j in sorted(sets)) + "}"


def _load(path: str):
    try:
        return read_problem(path)
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except (ProblemFormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _fuzzy(args, m: int) -> FuzzyParams:
    if args.d_list is not None:
        try:
            d = [float(t) for t in args.d_list.split(",")]
        except ValueError:
            raise InputError(f"--d-list: not a comma-separated list of numbers: {args.d_list!r}") from None
        if len(d) != m:
            raise InputError(f"--d-list has {len(d)} values, problem has m={m}")
    else:
        d = [args.d] * m
    try:
        return FuzzyParams(d=np.array(d), d0=args.d0, v=args.v)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_crisp(args) -> int:
    p = _load(args.file)
    cs = crisp_optimum(p)
    print(f"problem {p.id}: m={p.m} n={p.n}")
    print(f"x_bar = {_vec(cs.x_bar)}")
    print(f"x*    = {_vec(cs.x_star)}")
    print(f"z*    = {cs.z_star:.4f}")
    return EXIT_OK


def cmd_solve(args) -> int:
    p = _load(args.file)
    fp = _fuzzy(args, p.m)
    rules = frozenset() if args.no_simplify else DEFAULT_RULES
    rep = solve_fri_fc(p, fp, rules=rules)
    r = rep.report
    err = error_metric(p, fp, rep.z0, rep.x_star_star)
    print(f"problem {p.id}: m={p.m} n={p.n}")
    print(f"c'x*   = {rep.crisp.z_star:.4f}")
    print(f"c'x**  = {rep.obj_value:.4f}")
    print(f"[z0, z0+d0] = [{rep.interval[0]:.4f}, {rep.interval[1]:.4f}]")
    print(f"lambda* = {rep.lambda_star:.4f}")
    print(f"mu_F = {r.mu_F:.4f}  mu_0 = {r.mu_0:.4f}  mu_T = {r.mu_T:.4f}")
    print(f"x*  = {_vec(rep.crisp.x_star)}")
    print(f"x** = {_vec(rep.x_star_star)}")
    print(f"CCV = {_vec(r.ccv)}")
    print(f"FCV = {_vec(r.fcv)}")
    print(f"error = {err:.6g}  time = {rep.runtime_seconds:.4f}s")
    if not rep.admissible:
        print("no admissible super-optimum at these tolerances (lambda* < 0)")
    return EXIT_OK


def cmd_simplify(args) -> int:
    p = _load(args.file)
    sp = simplify(p)
    print(f"problem {p.id}: m={p.m} n={p.n}")
    print("A':")
    for row in sp.A_prime:
        print("  " + " ".join(f"{v:.4f}" for v in row))
    print(f"J'  = {_sets(sp.J_prime)}")
    for i, cols in enumerate(sp.J_prime_i):
        print(f"J'_{i + 1} = {_sets(cols)}")
    fixed = ", ".join(f"x{j + 1}={v:g}" for j, v in sp.fixed.items()) or "none"
    print(f"fixed: {fixed}")
    print(f"free:  {_sets(sp.free)}")
    print(f"(solve uses rules {sorted(DEFAULT_RULES)}; zeroing is exact for the crisp set only)")
    return EXIT_OK


def cmd_heuristic(args) -> int:
    p = _load(args.file)
    fp = _fuzzy(args, p.m)
    z0 = crisp_optimum(p).z_star - fp.v * fp.d0
    base = default_configs()[args.algo]
    finals = []
    trace_dir = Path(args.trace_out) if args.trace_out else None
    if trace_dir:
        trace_dir.mkdir(parents=True, exist_ok=True)
    for r in range(args.runs):
        cfg = with_seed(base, args.seed + r, args.iters)
        tr = run_heuristic(p, fp, z0, cfg)
        finals.append(tr.final_mu_T)
        if trace_dir:
            write_trace(tr, trace_dir / f"trace_{p.id}_{args.algo}_{r}.csv")
    finals = np.array(finals)
    print(f"problem {p.id}: {args.algo}, {args.runs} runs x {args.iters} iterations")
    print(f"best mu_T = {finals.max():.4f}  avg = {finals.mean():.4f}  "
          f"mdn = {np.median(finals):.4f}  sd = {finals.std(ddof=1) if finals.size > 1 else 0.0:.4f}")
    return EXIT_OK


def _check_table1(summary) -> list[str]:
    failures = []
    refs = {p.id: ref for p, ref in appendix.appendix_suite()}
    for row in summary.rows:
        ref = refs[row.id]
        rep = row.report
        checks = {
            "mu_T": (rep.report.mu_T, ref.mu_T),
            "c'x**": (rep.obj_value, ref.obj_star_star),
            "c'x*": (rep.crisp.z_star, ref.obj_star),
            "z0": (rep.interval[0], ref.interval[0]),
            "z0+d0": (rep.interval[1], ref.interval[1]),
        }
        for name, (got, want) in checks.items():
            ok = abs(got - want) <= TABLE1_TOL
            print(f"  {'PASS' if ok else 'FAIL'} {row.id} {name}: {got:.4f} vs {want:.4f}")
            if not ok:
                failures.append(f"{row.id} {name}")
    return failures


def cmd_reproduce(args) -> int:
    if args.suite != "appendix-a":
        raise InputError(f"unknown suite {args.suite!r}")
    problems = [p for p, _ in appendix.appendix_suite()]
    algos = [a for a in args.algos.split(",") if a] if args.algos else list(ALGORITHMS)
    bad = set(algos) - set(ALGORITHMS)
    if bad:
        raise InputError(f"unknown algorithms: {sorted(bad)}")
    summary = run_suite(
        problems, algorithms=algos, repetitions=args.runs, iterations=args.iters,
        master_seed=args.seed, workers=args.workers,
    )
    print("Table 1 check (tolerance 5e-4):")
    failures = _check_table1(summary)
    print(f"{'id':>5} {'muT':>7} {'c`x**':>9} {'c`x*':>9} {'error':>10} " +
          " ".join(f"{a:>7}" for a in algos))
    for row in summary.rows:
        avgs = " ".join(f"{summary.stats[(row.id, a)].avg:7.4f}" for a in algos)
        print(f"{row.id:>5} {row.mu_T:7.4f} {row.report.obj_value:9.4f} "
              f"{row.report.crisp.z_star:9.4f} {row.error:10.6f} {avgs}")
    if args.out:
        delim = "\t" if args.format == "tsv" else ","
        files = write_tables(summary, args.out, delimiter=delim)
        print(f"wrote {len(files)} files to {args.out}")
    if failures:
        print(f"reproduction FAILED: {', '.join(failures)}")
        return EXIT_SOLVER
    print("reproduction OK")
    return EXIT_OK


def cmd_compare(args) -> int:
    p = _load(args.file)
    fp = _fuzzy(args, p.m)
    summary = run_suite([p], fp_for=lambda _: fp, repetitions=args.runs,
                        iterations=args.iters, master_seed=args.seed, workers=args.workers)
    row = summary.rows[0]
    print(f"problem {p.id}: exact mu_T = {row.mu_T:.4f}  error = {row.error:.6g}  "
          f"time = {row.report.runtime_seconds:.4f}s")
    for a in summary.algorithms:
        s = summary.stats[(p.id, a)]
        print(f"  {a:>5}: best {s.best:.4f}  avg {s.avg:.4f}  mdn {s.mdn:.4f}  sd {s.sd:.4f}  "
              f"error {s.mean_error:.4f}  time {s.mean_seconds:.4f}s")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.m < 1 or args.n < 1:
        raise InputError("--m and --n must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise InputError("--seed must be a 64-bit unsigned integer")
    p = gen_random(args.m, args.n, args.seed)
    Path(args.out).write_text(write_problem(p), encoding="utf-8")
    print(f"wrote {args.m}x{args.n} problem (seed {args.seed}) to {args.out}")
    return EXIT_OK


def _add_fuzzy(sp):
    sp.add_argument("--d", type=float, default=0.1, help="violation tolerance for every constraint")
    sp.add_argument("--d-list", default=None, help="comma-separated per-constraint tolerances")
    sp.add_argument("--d0", type=float, default=0.1, help="objective tolerance")
    sp.add_argument("--v", type=float, default=0.5, help="symmetry parameter in (0, 1)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frifc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("crisp", help="maximum solution and crisp optimum")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_crisp)

    sp = sub.add_parser("solve", help="best super-optimum via the linearized model")
    sp.add_argument("file")
    _add_fuzzy(sp)
    sp.add_argument("--no-simplify", action="store_true", help="build the LP without simplification")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("simplify", help="print the simplified problem")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_simplify)

    sp = sub.add_parser("heuristic", help="run a baseline metaheuristic")
    sp.add_argument("file")
    sp.add_argument("--algo", choices=ALGORITHMS, required=True)
    sp.add_argument("--runs", type=int, default=30)
    sp.add_argument("--iters", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trace-out", default=None, help="directory for per-run trace CSVs")
    _add_fuzzy(sp)
    sp.set_defaults(func=cmd_heuristic)

    sp = sub.add_parser("compare", help="exact solver versus all baselines on one file")
    sp.add_argument("file")
    sp.add_argument("--runs", type=int, default=30)
    sp.add_argument("--iters", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    _add_fuzzy(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("reproduce", help="rerun the published experiment suite")
    sp.add_argument("--suite", required=True, choices=["appendix-a"])
    sp.add_argument("--out", default=None, help="directory for table files")
    sp.add_argument("--runs", type=int, default=30)
    sp.add_argument("--iters", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--algos", default=None, help="comma-separated subset of pso,acor,de,hs")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=["csv", "tsv"], default="csv")
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("gen", help="write a seeded random problem")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)
    return ap


def _validate(args):
    for name in ("runs", "iters", "workers"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            raise InputError(f"--{name} must be >= 1")
    seed = getattr(args, "seed", None)
    if seed is not None and not 0 <= seed < 2**64:
        raise InputError("--seed must be a 64-bit unsigned integer")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; map its status onto ours
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        _validate(args)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LpError, SuiteError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
