"""Mean best-so-far curves of each baseline per problem, written as CSV.

One file per problem with columns ``iter, exact, <algo>...``; the exact column
is the solver's total value repeated, for plotting against.
"""
from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from frifc.appendix import SUITE_IDS, appendix_problem
from frifc.bench import run_suite


@dataclass
class Config:
    out: str = "results/convergence"
    problems: tuple[str, ...] = SUITE_IDS
    runs: int = 30
    iters: int = 100
    seed: int = 0


def main(cfg: Config) -> None:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    problems = [appendix_problem(pid) for pid in cfg.problems]
    s = run_suite(problems, repetitions=cfg.runs, iterations=cfg.iters, master_seed=cfg.seed)
    for row in s.rows:
        curves = {
            a: np.mean([s.traces[(row.id, a, r)].best_so_far for r in range(cfg.runs)], axis=0)
            for a in s.algorithms
        }
        path = out / f"convergence_{row.id}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["iter", "exact", *s.algorithms])
            for k in range(cfg.iters):
                w.writerow([k + 1, row.mu_T, *(curves[a][k] for a in s.algorithms)])
        final = "  ".join(f"{a} {curves[a][-1]:.4f}" for a in s.algorithms)
        print(f"{row.id:>5}: exact {row.mu_T:.4f}  {final}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=Config.out)
    ap.add_argument("--problems", default=",".join(SUITE_IDS))
    ap.add_argument("--runs", type=int, default=Config.runs)
    ap.add_argument("--iters", type=int, default=Config.iters)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(out=a.out, problems=tuple(a.problems.split(",")), runs=a.runs, iters=a.iters, seed=a.seed))
