"""Linear reformulation of the fuzzy maximin problem and the end-to-end solver.

With ``D_i = 1/d_i``, ``B_i = 1 + b_i/d_i`` and ``B_0 = 1 + z0/d0`` the
problem ``max_x min(mu_0(x), mu_F(x))`` becomes::

    maximize    lam
    subject to  D_i a_ij x_j + lam <= B_i        for every active cell (i, j)
                D_0 c'x + lam      <= B_0
                0 <= x_j <= 1

The optimal ``lam`` equals the best total value whenever it lies in [0, 1].
Among the optimal ``x`` the solver returns the *capped* point: every free
component is pushed to the largest value its rows allow at level ``lam``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .core import CrispSolution, MembershipReport, crisp_optimum, evaluate
from .lp import DenseLP, LpError, solve_lp
from .problem import FriProblem, FuzzyParams
from .simplify import ALL_RULES, SimplifiedProblem, simplify

__all__ = [
    "LinearProgram",
    "SolveReport",
    "DEFAULT_RULES",
    "build_lp",
    "maximin_bisection",
    "solve_fri_fc",
]

# Zeroing (rule 1) preserves the crisp feasible set only; on the fuzzy problem
# it can raise the LP optimum above the true best total value, so the solver
# leaves it out unless asked.
DEFAULT_RULES = frozenset({2, 3})

BISECTION_TOL = 1e-10


@dataclass(frozen=True)
class LinearProgram:
    """The level-maximization LP over the free columns of a simplified problem.

    Variables are ``x_j`` for ``j in free`` followed by ``lam``.  ``rows`` holds
    one ``(i, j, D_i * a'_ij, B_i)`` tuple per active cell; the objective row is
    ``D0 * sum_j c_j x_j + lam <= B0 - D0 * fixed_cost``.
    """

    free: tuple[int, ...]
    rows: tuple[tuple[int, int, float, float], ...]
    obj_coef: np.ndarray
    obj_rhs: float
    D: np.ndarray
    B: np.ndarray
    D0: float
    B0: float
    z0: float
    fixed_cost: float
    lam_bounds: tuple[float, float]
    sp: SimplifiedProblem = field(repr=False)

    @property
    def num_x(self) -> int:
        return len(self.free)

    def to_dense(self) -> DenseLP:
        k = self.num_x
        pos = {j: t for t, j in enumerate(self.free)}
        G = np.zeros((len(self.rows) + 1, k + 1))
        h = np.empty(len(self.rows) + 1)
        for r, (_, j, coef, rhs) in enumerate(self.rows):
            G[r, pos[j]] = coef
            G[r, k] = 1.0
            h[r] = rhs
        G[-1, :k] = self.obj_coef
        G[-1, k] = 1.0
        h[-1] = self.obj_rhs
        c = np.zeros(k + 1)
        c[k] = 1.0
        lo = np.concatenate([np.zeros(k), [self.lam_bounds[0]]])
        hi = np.concatenate([np.ones(k), [self.lam_bounds[1]]])
        return DenseLP(c=c, G=G, h=h, lo=lo, hi=hi)

    def caps(self, level: float) -> np.ndarray:
        """Largest value of each free column compatible with ``level`` (in [0, 1])."""
        cap = np.ones(self.num_x)
        pos = {j: t for t, j in enumerate(self.free)}
        for _, j, coef, rhs in self.rows:
            t = pos[j]
            cap[t] = min(cap[t], (rhs - level) / coef)
        return np.clip(cap, 0.0, 1.0)

    def point(self, level: float) -> np.ndarray:
        """Full-length point at ``level``: fixed values, caps for ``c_j < 0``, else 0."""
        x = self.sp.fixed_point()
        caps = self.caps(level)
        c = self.sp.origin.c
        for t, j in enumerate(self.free):
            x[j] = caps[t] if c[j] < 0 else 0.0
        return x

    def achievable(self, level: float) -> bool:
        x = self.point(level)
        free = list(self.free)
        return self.D0 * float(self.sp.origin.c[free] @ x[free]) + level <= self.obj_rhs


@dataclass(frozen=True)
class SolveReport:
    """Result of :func:`solve_fri_fc`.

    ``x_star_star`` is the best super-optimum in original coordinates and
    ``lambda_star`` the optimal LP level.  ``admissible`` is False when the
    level is negative, i.e. no point reaches a positive total value at the
    given tolerances.  ``error`` is the published error metric (NaN until
    filled by the benchmark harness).
    """

    x_star_star: np.ndarray
    lambda_star: float
    report: MembershipReport
    z0: float
    interval: tuple[float, float]
    obj_value: float
    crisp: CrispSolution
    runtime_seconds: float
    error: float = math.nan
    lp_iterations: int = 0
    rules: frozenset = DEFAULT_RULES

    @property
    def admissible(self) -> bool:
        return self.lambda_star >= 0.0


def build_lp(sp: SimplifiedProblem, fp: FuzzyParams, z_star: float) -> LinearProgram:
    """Assemble the level-maximization LP for a simplified problem."""
    p = sp.origin
    fp.check(p)
    if not (np.all(fp.d > 0) and fp.d0 > 0):
        raise ValueError("tolerances d_i and d0 must be > 0")
    D = 1.0 / fp.d
    B = 1.0 + p.b / fp.d
    D0 = 1.0 / fp.d0
    z0 = z_star - fp.v * fp.d0
    B0 = 1.0 + z0 / fp.d0

    A = sp.A_prime
    free_set = set(sp.free)
    rows = []
    for i, j in sp.cells():
        if j in free_set:
            rows.append((i, j, float(D[i] * A[i, j]), float(B[i])))

    free = sp.free
    fixed_cost = float(p.c @ sp.fixed_point())
    obj_coef = D0 * p.c[list(free)] if free else np.zeros(0)
    bound = 1.0 + float(max(B.max(), B0))
    return LinearProgram(
        free=free,
        rows=tuple(rows),
        obj_coef=np.asarray(obj_coef, dtype=float),
        obj_rhs=float(B0 - D0 * fixed_cost),
        D=D,
        B=B,
        D0=D0,
        B0=B0,
        z0=z0,
        fixed_cost=fixed_cost,
        lam_bounds=(-bound, bound),
        sp=sp,
    )


def maximin_bisection(sp: SimplifiedProblem, fp: FuzzyParams, z_star: float,
                      tol: float = BISECTION_TOL) -> tuple[float, np.ndarray]:
    """Largest achievable level by bisection, independent of the LP solver.

    At a trial level every free column with ``c_j < 0`` is set to its cap; the
    objective side is increasing in the level, so achievability is monotone.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    lp = build_lp(sp, fp, z_star)
    lo, hi = lp.lam_bounds
    while not lp.achievable(lo):
        lo = 2.0 * lo - 1.0
    if lp.achievable(hi):
        return hi, lp.point(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if lp.achievable(mid):
            lo = mid
        else:
            hi = mid
    return lo, lp.point(lo)


def solve_fri_fc(p: FriProblem, fp: FuzzyParams, rules=DEFAULT_RULES) -> SolveReport:
    """Crisp optimum, simplification, LP solve, and evaluation of the super-optimum.

    Raises :class:`~frifc.lp.LpError` if the LP solver does not report an
    optimum (not expected on valid input: ``x*`` at level ``1 - v`` is
    always feasible).
    """
    t0 = time.perf_counter()
    fp.check(p)
    crisp = crisp_optimum(p)
    sp = simplify(p, rules)
    lp = build_lp(sp, fp, crisp.z_star)
    sol = solve_lp(lp)
    if not sol.optimal:
        raise LpError(f"LP solve failed for problem {p.id!r}: {sol.status.value}")
    lam = float(sol.values[-1])
    x = lp.point(lam)
    report = evaluate(p, fp, lp.z0, x)
    elapsed = time.perf_counter() - t0
    return SolveReport(
        x_star_star=x,
        lambda_star=lam,
        report=report,
        z0=lp.z0,
        interval=(lp.z0, lp.z0 + fp.d0),
        obj_value=float(p.c @ x),
        crisp=crisp,
        runtime_seconds=elapsed,
        lp_iterations=sol.iterations,
        rules=frozenset(rules),
    )
