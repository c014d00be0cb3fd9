"""Experiment harness: exact solver versus baselines, error metric, statistics, tables."""
from __future__ import annotations

import csv
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import special, stats

from .core import violation_vectors
from .heuristics import HeuristicConfig, RunTrace, default_configs, run_heuristic, with_seed
from .linearize import DEFAULT_RULES, SolveReport, solve_fri_fc
from .problem import FriProblem, FuzzyParams

__all__ = [
    "error_metric",
    "summarize_runs",
    "TTestResult",
    "DegenerateVarianceError",
    "SuiteError",
    "paired_t_test",
    "ExactRow",
    "RunStats",
    "BenchSummary",
    "run_suite",
    "derive_seed",
    "write_tables",
]


def error_metric(p: FriProblem, fp: FuzzyParams, z0: float, x) -> float:
    """``(mean crisp violation + |z0 - c'x|) / 2``."""
    ccv, _ = violation_vectors(p, fp, x)
    return 0.5 * (float(ccv.mean()) + abs(z0 - float(p.c @ np.asarray(x, dtype=float))))


def summarize_runs(traces: Sequence[RunTrace]) -> tuple[float, float, float]:
    """Mean, median and sample standard deviation of the final best values."""
    if not traces:
        raise ValueError("need at least one trace")
    finals = [t.final_mu_T for t in traces]
    sd = statistics.stdev(finals) if len(finals) > 1 else 0.0
    return statistics.fmean(finals), statistics.median(finals), sd


class SuiteError(RuntimeError):
    """A component failed on one problem of a suite."""

    def __init__(self, problem_id: str, cause: Exception):
        self.problem_id = problem_id
        super().__init__(f"[{problem_id}] {type(cause).__name__}: {cause}")


class DegenerateVarianceError(ValueError):
    """Paired differences have zero spread; the t statistic is undefined."""


@dataclass(frozen=True)
class TTestResult:
    mean: float
    sd: float
    sem: float
    t: float
    df: int
    p: float
    ci95: tuple[float, float]


def paired_t_test(diffs: Iterable[float]) -> TTestResult:
    """Classical paired t-test on a sample of differences (two-sided p)."""
    d = np.asarray(list(diffs), dtype=float)
    if d.size < 2:
        raise ValueError("need at least two differences")
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        raise DegenerateVarianceError("all differences are identical")
    df = d.size - 1
    sem = sd / math.sqrt(d.size)
    t = mean / sem
    # two-sided tail of Student's t via the regularized incomplete beta function
    p = float(special.betainc(df / 2.0, 0.5, df / (df + t * t)))
    half = float(stats.t.ppf(0.975, df)) * sem
    return TTestResult(mean=mean, sd=sd, sem=sem, t=t, df=df, p=p, ci95=(mean - half, mean + half))


@dataclass(frozen=True)
class ExactRow:
    id: str
    report: SolveReport
    error: float

    @property
    def mu_T(self) -> float:
        return self.report.report.mu_T


@dataclass(frozen=True)
class RunStats:
    avg: float
    mdn: float
    sd: float
    best: float
    mean_error: float
    mean_seconds: float
    errors: tuple[float, ...]


@dataclass
class BenchSummary:
    rows: list[ExactRow]
    algorithms: tuple[str, ...]
    repetitions: int
    iterations: int
    stats: dict[tuple[str, str], RunStats] = field(default_factory=dict)
    traces: dict[tuple[str, str, int], RunTrace] = field(default_factory=dict, repr=False)
    ttest: dict[str, TTestResult | None] = field(default_factory=dict)

    def row(self, pid: str) -> ExactRow:
        for r in self.rows:
            if r.id == pid:
                return r
        raise KeyError(pid)


def derive_seed(master_seed: int, *key: int) -> int:
    """Deterministic 64-bit seed for a (problem, algorithm, repetition) cell."""
    ss = np.random.SeedSequence([master_seed, *key])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _default_fp(p: FriProblem) -> FuzzyParams:
    return FuzzyParams.uniform(p.m, d=0.1, d0=0.1, v=0.5)


def _run_cell(args):
    p, fp, z0, cfg, key = args
    return key, run_heuristic(p, fp, z0, cfg)


def run_suite(
    problems: Sequence[FriProblem],
    fp_for: Callable[[FriProblem], FuzzyParams] = _default_fp,
    algorithms: Sequence[str] = ("pso", "acor", "de", "hs"),
    repetitions: int = 30,
    iterations: int = 100,
    master_seed: int = 0,
    configs: dict[str, HeuristicConfig] | None = None,
    workers: int = 1,
    rules=DEFAULT_RULES,
) -> BenchSummary:
    """Solve every problem exactly and run each baseline ``repetitions`` times.

    Seeds are derived from ``master_seed`` and the cell key, and results are
    collected by key, so output does not depend on ``workers``.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    configs = configs or default_configs()
    unknown = set(algorithms) - set(configs)
    if unknown:
        raise ValueError(f"no configuration for algorithms {sorted(unknown)}")

    rows: list[ExactRow] = []
    jobs = []
    for pi, p in enumerate(problems):
        fp = fp_for(p)
        try:
            rep = solve_fri_fc(p, fp, rules=rules)
        except Exception as exc:
            raise SuiteError(p.id, exc) from exc
        err = error_metric(p, fp, rep.z0, rep.x_star_star)
        rows.append(ExactRow(id=p.id, report=replace(rep, error=err), error=err))
        for ai, algo in enumerate(algorithms):
            for r in range(repetitions):
                cfg = with_seed(configs[algo], derive_seed(master_seed, pi, ai, r), iterations)
                jobs.append((p, fp, rep.z0, cfg, (p.id, algo, r)))

    traces: dict[tuple[str, str, int], RunTrace] = {}
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for key, tr in pool.map(_run_cell, jobs, chunksize=8):
                traces[key] = tr
    else:
        for job in jobs:
            key, tr = _run_cell(job)
            traces[key] = tr

    summary = BenchSummary(
        rows=rows, algorithms=tuple(algorithms), repetitions=repetitions,
        iterations=iterations, traces=traces,
    )
    for p in problems:
        fp = fp_for(p)
        z0 = summary.row(p.id).report.z0
        for algo in algorithms:
            runs = [traces[(p.id, algo, r)] for r in range(repetitions)]
            avg, mdn, sd = summarize_runs(runs)
            errs = tuple(error_metric(p, fp, z0, t.final_x) for t in runs)
            summary.stats[(p.id, algo)] = RunStats(
                avg=avg, mdn=mdn, sd=sd,
                best=max(t.final_mu_T for t in runs),
                mean_error=statistics.fmean(errs),
                mean_seconds=statistics.fmean(t.wall_seconds for t in runs),
                errors=errs,
            )
    for algo in algorithms:
        diffs = [_clamp(r.report.lambda_star) - summary.stats[(r.id, algo)].avg for r in rows]
        try:
            summary.ttest[algo] = paired_t_test(diffs)
        except (ValueError, DegenerateVarianceError):
            summary.ttest[algo] = None
    return summary


def _clamp(v: float) -> float:
    return min(1.0, max(0.0, v))


def _vec(x) -> str:
    return ";".join(repr(float(v)) for v in x)


def write_tables(summary: BenchSummary, out_dir, delimiter: str = ",",
                 traces: bool = True) -> list[Path]:
    """Write the table files (and per-run traces) into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = "csv" if delimiter == "," else "tsv"
    written: list[Path] = []

    def emit(name: str, header: list[str], body: list[list]):
        path = out / f"{name}.{ext}"
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
            w.writerow(header)
            w.writerows(body)
        written.append(path)

    algos = list(summary.algorithms)
    emit("table1", ["id", "muF", "mu0", "muT", "obj_ss", "obj_s", "z0", "z0+d0"], [
        [r.id, r.report.report.mu_F, r.report.report.mu_0, r.report.report.mu_T,
         r.report.obj_value, r.report.crisp.z_star, r.report.interval[0], r.report.interval[1]]
        for r in summary.rows
    ])
    emit("table2", ["id", "x_star", "x_star_star", "ccv"], [
        [r.id, _vec(r.report.crisp.x_star), _vec(r.report.x_star_star), _vec(r.report.report.ccv)]
        for r in summary.rows
    ])
    if algos:
        emit("table3", ["id", "exact", *algos], [
            [r.id, r.mu_T, *(summary.stats[(r.id, a)].best for a in algos)] for r in summary.rows
        ])
        emit("table4", ["id", "stat", *algos], [
            [r.id, stat, *(getattr(summary.stats[(r.id, a)], stat) for a in algos)]
            for r in summary.rows for stat in ("avg", "mdn", "sd")
        ])
    t5 = [[r.id, r.error, *(summary.stats[(r.id, a)].mean_error for a in algos)] for r in summary.rows]
    mse = ["MSE", statistics.fmean(r.error ** 2 for r in summary.rows)]
    mse += [statistics.fmean(summary.stats[(r.id, a)].mean_error ** 2 for r in summary.rows) for a in algos]
    emit("table5", ["id", "exact", *algos], t5 + [mse])
    emit("table6", ["id", "exact", *algos], [
        [r.id, r.report.runtime_seconds, *(summary.stats[(r.id, a)].mean_seconds for a in algos)]
        for r in summary.rows
    ])
    if algos:
        body = []
        for a in algos:
            tt = summary.ttest.get(a)
            if tt is None:
                body.append([a, "", "", "", "", "", "", "", ""])
            else:
                body.append([a, tt.mean, tt.sd, tt.sem, tt.t, tt.df, tt.p, tt.ci95[0], tt.ci95[1]])
        emit("table7", ["algo", "mean_diff", "sd", "sem", "t", "df", "p", "ci_low", "ci_high"], body)

    if traces:
        for (pid, algo, rep), tr in sorted(summary.traces.items()):
            path = out / f"trace_{pid}_{algo}_{rep}.{ext}"
            write_trace(tr, path, delimiter)
            written.append(path)
    return written


def write_trace(trace: RunTrace, path, delimiter: str = ",") -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        w.writerow(["iter", "best_mu_T"])
        for i, v in enumerate(trace.best_so_far, start=1):
            w.writerow([i, repr(float(v))])
