"""Rerun the ten-problem benchmark and compare against the published numbers.

    python scripts/reproduce_tables.py --out results/appendix --runs 30 --iters 100
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from frifc.appendix import TABLE5_ERROR, TABLE7_DIFFS, TABLE7_SUMMARY, appendix_suite
from frifc.bench import paired_t_test, run_suite, write_tables


@dataclass
class Config:
    out: str = "results/appendix"
    runs: int = 30
    iters: int = 100
    seed: int = 0
    workers: int = 1
    delimiter: str = ","


def main(cfg: Config) -> None:
    suite = appendix_suite()
    summary = run_suite([p for p, _ in suite], repetitions=cfg.runs, iterations=cfg.iters,
                        master_seed=cfg.seed, workers=cfg.workers)
    files = write_tables(summary, cfg.out, delimiter=cfg.delimiter)
    print(f"wrote {len(files)} files to {cfg.out}\n")

    print(f"{'id':>5} {'muT':>8} {'pub':>8} {'c`x**':>10} {'pub':>10} {'error':>10} {'pub':>10}")
    for (p, ref), row in zip(suite, summary.rows):
        rep = row.report
        print(f"{p.id:>5} {rep.report.mu_T:8.4f} {ref.mu_T:8.4f} {rep.obj_value:10.4f} "
              f"{ref.obj_star_star:10.4f} {row.error:10.6f} {TABLE5_ERROR[p.id]:10.6f}")

    print("\nbaseline averages of the final best total value")
    print(f"{'id':>5} " + " ".join(f"{a:>8}" for a in summary.algorithms))
    for row in summary.rows:
        print(f"{row.id:>5} " + " ".join(f"{summary.stats[(row.id, a)].avg:8.4f}" for a in summary.algorithms))

    print("\npaired t-test, exact minus baseline average (this run)")
    for algo, tt in summary.ttest.items():
        if tt is None:
            print(f"  {algo:>5}: degenerate")
        else:
            print(f"  {algo:>5}: mean {tt.mean:.5f} sd {tt.sd:.5f} sem {tt.sem:.6f} "
                  f"p {tt.p:.3e} ci [{tt.ci95[0]:.4f}, {tt.ci95[1]:.4f}]")
    print("\npaired t-test on the published differences")
    for algo, diffs in TABLE7_DIFFS.items():
        tt = paired_t_test(diffs)
        pub = TABLE7_SUMMARY[algo]
        print(f"  {algo:>5}: mean {tt.mean:.5f} ({pub['mean']}) sd {tt.sd:.5f} ({pub['sd']}) "
              f"sem {tt.sem:.6f} ({pub['sem']}) p {tt.p:.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=Config.out)
    ap.add_argument("--runs", type=int, default=Config.runs)
    ap.add_argument("--iters", type=int, default=Config.iters)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--workers", type=int, default=Config.workers)
    ap.add_argument("--tsv", action="store_true")
    a = ap.parse_args()
    main(Config(out=a.out, runs=a.runs, iters=a.iters, seed=a.seed, workers=a.workers,
                delimiter="\t" if a.tsv else ","))
