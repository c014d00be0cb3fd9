"""Metaheuristic baselines maximizing the total value over the unit box.

All four algorithms share the same budget convention: ``iterations`` counts
trace entries, and the first entry is the evaluation of the initial
population, so a run performs ``iterations - 1`` update rounds.  Trial points
are clipped to [0, 1]^n before they are evaluated (no penalty term).

Randomness comes from numpy's counter-based ``Philox`` bit generator seeded
with the configured 64-bit seed, so traces are reproducible across platforms.

Parameter notes:

* PSO inertia falls linearly from ``w_start`` to ``w_end`` over the update
  rounds; velocities are clipped to ``[-vmax, vmax]``.
* ACO_R follows the archive-based continuous ant colony scheme: ``population``
  ants per round sample around an archive member chosen with Gaussian rank
  weights (locality ``q``), spread ``xi`` times the mean archive distance.
* DE is rand/1/bin with greedy replacement (partners are drawn with
  replacement when the population is too small for three distinct ones).
* HS improvises ``population`` harmonies per round (the same evaluation budget
  as the other methods), each replacing the worst memory entry if better;
  pitch adjustment moves by up to ``bw`` in either direction.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .core import total_value_batch
from .problem import FriProblem, FuzzyParams

__all__ = ["ALGORITHMS", "HeuristicConfig", "RunTrace", "default_configs", "run_heuristic"]

ALGORITHMS = ("pso", "acor", "de", "hs")


@dataclass(frozen=True)
class HeuristicConfig:
    algo: str
    population: int = 10
    iterations: int = 100
    seed: int = 0
    # pso
    c1: float = 2.0
    c2: float = 2.0
    w_start: float = 1.0
    w_end: float = 0.0
    vmax: float = 1.0
    # acor
    k: int = 50
    q: float = 1e-4
    xi: float = 0.85
    # de
    cr: float = 0.95
    F: float = 0.5
    # hs
    hms: int = 10
    hmcr: float = 0.825
    par: float = 0.35
    bw: float = 0.01

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algo!r}; expected one of {ALGORITHMS}")
        if self.population < 2:
            raise ValueError("population must be >= 2")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ("cr", "hmcr", "par", "w_start", "w_end"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {val}")
        if self.F <= 0:
            raise ValueError("F must be > 0")
        if self.k < 2 or self.hms < 2:
            raise ValueError("archive and memory sizes must be >= 2")
        if self.q <= 0 or self.xi <= 0 or self.vmax <= 0 or self.bw < 0:
            raise ValueError("q, xi and vmax must be > 0; bw must be >= 0")


@dataclass
class RunTrace:
    algo: str
    seed: int
    best_so_far: np.ndarray
    final_x: np.ndarray
    final_mu_T: float
    wall_seconds: float
    evaluated: list = field(default_factory=list, repr=False)


def default_configs(seed: int = 0) -> dict[str, HeuristicConfig]:
    """Published baseline settings: population 10, 100 iterations."""
    return {
        "pso": HeuristicConfig("pso", seed=seed, c1=2.0, c2=2.0, w_start=1.0, w_end=0.0),
        "acor": HeuristicConfig("acor", seed=seed, k=50, q=1e-4, xi=0.85),
        "de": HeuristicConfig("de", seed=seed, cr=0.95, F=0.5),
        "hs": HeuristicConfig("hs", seed=seed, hms=10, hmcr=0.825, par=0.35, bw=0.01),
    }


class _Tracker:
    def __init__(self, fitness, record: bool):
        self.fitness = fitness
        self.record = record
        self.evaluated: list[np.ndarray] = []
        self.best_x = None
        self.best_f = -np.inf
        self.history: list[float] = []

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.clip(X, 0.0, 1.0)
        if self.record:
            self.evaluated.append(X.copy())
        f = self.fitness(X)
        i = int(np.argmax(f))
        if f[i] > self.best_f:
            self.best_f = float(f[i])
            self.best_x = X[i].copy()
        return f

    def close_iteration(self):
        self.history.append(self.best_f)


def _pso(n, cfg, rng, ev):
    P = cfg.population
    X = rng.random((P, n))
    V = rng.uniform(-cfg.vmax, cfg.vmax, (P, n))
    f = ev(X)
    pbest, pbest_f = X.copy(), f.copy()
    ev.close_iteration()
    rounds = cfg.iterations - 1
    for t in range(rounds):
        w = cfg.w_start + (cfg.w_end - cfg.w_start) * t / max(rounds, 1)
        g = pbest[np.argmax(pbest_f)]
        r1 = rng.random((P, n))
        r2 = rng.random((P, n))
        V = w * V + cfg.c1 * r1 * (pbest - X) + cfg.c2 * r2 * (g - X)
        V = np.clip(V, -cfg.vmax, cfg.vmax)
        X = np.clip(X + V, 0.0, 1.0)
        f = ev(X)
        better = f > pbest_f
        pbest[better] = X[better]
        pbest_f[better] = f[better]
        ev.close_iteration()


def _acor(n, cfg, rng, ev):
    k = cfg.k
    S = rng.random((k, n))
    f = ev(S)
    ev.close_iteration()
    ranks = np.arange(k)
    # Gaussian rank weights in log space; tiny q concentrates all mass on rank 0
    logw = -(ranks ** 2) / (2.0 * (cfg.q * k) ** 2)
    prob = np.exp(logw - logw.max())
    prob /= prob.sum()
    for _ in range(cfg.iterations - 1):
        order = np.argsort(-f, kind="stable")
        S, f = S[order], f[order]
        chosen = rng.choice(k, size=cfg.population, p=prob)
        mu = S[chosen]
        sigma = cfg.xi * np.abs(S[None, :, :] - mu[:, None, :]).sum(axis=1) / (k - 1)
        new = mu + sigma * rng.standard_normal((cfg.population, n))
        new = np.clip(new, 0.0, 1.0)
        fn = ev(new)
        S = np.vstack([S, new])
        f = np.concatenate([f, fn])
        keep = np.argsort(-f, kind="stable")[:k]
        S, f = S[keep], f[keep]
        ev.close_iteration()


def _de(n, cfg, rng, ev):
    P = cfg.population
    X = rng.random((P, n))
    f = ev(X)
    ev.close_iteration()
    idx = np.arange(P)
    for _ in range(cfg.iterations - 1):
        trial = np.empty_like(X)
        for i in range(P):
            others = idx[idx != i]
            r1, r2, r3 = rng.choice(others, size=3, replace=others.size < 3)
            mutant = X[r1] + cfg.F * (X[r2] - X[r3])
            cross = rng.random(n) < cfg.cr
            cross[rng.integers(n)] = True
            trial[i] = np.where(cross, mutant, X[i])
        trial = np.clip(trial, 0.0, 1.0)
        ft = ev(trial)
        better = ft >= f
        X[better] = trial[better]
        f[better] = ft[better]
        ev.close_iteration()


def _hs(n, cfg, rng, ev):
    H = rng.random((cfg.hms, n))
    f = ev(H)
    ev.close_iteration()
    for _ in range(cfg.iterations - 1):
        new = np.empty((cfg.population, n))
        for s in range(cfg.population):
            from_memory = rng.random(n) < cfg.hmcr
            picks = H[rng.integers(cfg.hms, size=n), np.arange(n)]
            x = np.where(from_memory, picks, rng.random(n))
            adjust = from_memory & (rng.random(n) < cfg.par)
            x = np.where(adjust, x + cfg.bw * rng.uniform(-1.0, 1.0, n), x)
            new[s] = x
        new = np.clip(new, 0.0, 1.0)
        fn = ev(new)
        for s in range(cfg.population):
            worst = int(np.argmin(f))
            if fn[s] > f[worst]:
                H[worst] = new[s]
                f[worst] = fn[s]
        ev.close_iteration()


_RUNNERS = {"pso": _pso, "acor": _acor, "de": _de, "hs": _hs}


def run_heuristic(p: FriProblem, fp: FuzzyParams, z0: float, cfg: HeuristicConfig,
                  record: bool = False) -> RunTrace:
    """Maximize the total value of ``p`` with the configured baseline.

    With ``record=True`` every evaluated batch is kept in ``trace.evaluated``.
    """
    fp.check(p)
    t0 = time.perf_counter()
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    ev = _Tracker(lambda X: total_value_batch(p, fp, z0, X), record)
    _RUNNERS[cfg.algo](p.n, cfg, rng, ev)
    best = np.maximum.accumulate(np.asarray(ev.history, dtype=float))
    return RunTrace(
        algo=cfg.algo,
        seed=cfg.seed,
        best_so_far=best,
        final_x=ev.best_x,
        final_mu_T=float(best[-1]),
        wall_seconds=time.perf_counter() - t0,
        evaluated=ev.evaluated,
    )


def with_seed(cfg: HeuristicConfig, seed: int, iterations: int | None = None) -> HeuristicConfig:
    """Copy of ``cfg`` with a new seed (and optionally a new iteration budget)."""
    changes = {"seed": seed}
    if iterations is not None:
        changes["iterations"] = iterations
    return replace(cfg, **changes)
