"""Dense bounded-variable primal simplex.

Solves::

    maximize    c'x
    subject to  G x <= h
                lo <= x <= hi      (finite bounds)

Slack variables turn the rows into equalities; rows whose slack would start
negative get an artificial variable and are repaired in phase 1.  Nonbasic
variables sit at one of their bounds, so box constraints never become rows.
Pricing is Dantzig (largest reduced cost) with a switch to Bland's rule after a
streak of degenerate pivots, which guarantees termination.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = ["DenseLP", "LpSolution", "LpStatus", "LpError", "solve_lp"]

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-10
DEGENERATE_STREAK = 50
REFRESH_EVERY = 50


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


class LpError(RuntimeError):
    """Raised by callers that require an optimal solution."""


@dataclass(frozen=True)
class DenseLP:
    c: np.ndarray
    G: np.ndarray
    h: np.ndarray
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        n = c.shape[0]
        G = np.asarray(self.G, dtype=float).reshape(-1, n)
        h = np.asarray(self.h, dtype=float).reshape(-1)
        lo = np.asarray(self.lo, dtype=float).reshape(n)
        hi = np.asarray(self.hi, dtype=float).reshape(n)
        if h.shape[0] != G.shape[0]:
            raise ValueError("G and h disagree on the number of rows")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("all variable bounds must be finite")
        for name, val in (("c", c), ("G", G), ("h", h), ("lo", lo), ("hi", hi)):
            object.__setattr__(self, name, val)

    def to_dense(self) -> "DenseLP":
        return self


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    values: np.ndarray
    objective: float
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Simplex:
    """Tableau ``T = B^-1 S`` over columns ``[structural | slack | artificial]``."""

    def __init__(self, lp: DenseLP, feas_tol: float, pivot_tol: float, max_iter: int):
        self.feas_tol = feas_tol
        self.pivot_tol = pivot_tol
        self.max_iter = max_iter
        self.iterations = 0

        G, h = lp.G, lp.h
        m, n = G.shape
        x0 = np.where(np.abs(lp.lo) <= np.abs(lp.hi), lp.lo, lp.hi)
        resid = h - G @ x0
        art_rows = np.flatnonzero(resid < 0)
        k = art_rows.size

        S = np.zeros((m, n + m + k))
        S[:, :n] = G
        S[:, n:n + m] = np.eye(m)
        S[art_rows, n + m + np.arange(k)] = -1.0

        basis = n + np.arange(m)
        basis[art_rows] = n + m + np.arange(k)

        self.m, self.n, self.n_art = m, n, k
        self.S, self.h = S, h
        self.lo = np.concatenate([lp.lo, np.zeros(m + k)])
        self.hi = np.concatenate([lp.hi, np.full(m + k, np.inf)])
        self.x = np.concatenate([x0, np.zeros(m + k)])
        self.basis = basis
        self.is_basic = np.zeros(n + m + k, dtype=bool)
        self.is_basic[basis] = True
        self.cost = np.concatenate([lp.c, np.zeros(m + k)])
        self.refresh()

    @property
    def first_art(self) -> int:
        return self.n + self.m

    def refresh(self):
        """Recompute tableau and basic values from the original system."""
        if self.m == 0:
            self.T = np.zeros((0, self.S.shape[1]))
            return
        B = self.S[:, self.basis]
        nonbasic = ~self.is_basic
        rhs = self.h - self.S[:, nonbasic] @ self.x[nonbasic]
        self.T = np.linalg.solve(B, self.S)
        self.x[self.basis] = np.linalg.solve(B, rhs)

    def pivot(self, r: int, q: int):
        T = self.T
        T[r] /= T[r, q]
        others = np.flatnonzero(T[:, q])
        for i in others:
            if i != r:
                T[i] -= T[i, q] * T[r]
        out = self.basis[r]
        self.is_basic[out] = False
        self.is_basic[q] = True
        self.basis[r] = q

    def run(self, cost: np.ndarray) -> LpStatus:
        tol = self.feas_tol
        streak = 0
        pivots = 0
        while True:
            if self.iterations >= self.max_iter:
                return LpStatus.ITERATION_LIMIT
            d = cost - cost[self.basis] @ self.T
            nonbasic = ~self.is_basic
            room_up = self.x < self.hi - tol
            room_down = self.x > self.lo + tol
            up = nonbasic & room_up & (d > tol)
            down = nonbasic & room_down & (d < -tol)
            candidates = np.flatnonzero(up | down)
            if candidates.size == 0:
                return LpStatus.OPTIMAL

            bland = streak >= DEGENERATE_STREAK
            if bland:
                q = int(candidates[0])
            else:
                q = int(candidates[np.argmax(np.abs(d[candidates]))])
            sgn = 1.0 if up[q] else -1.0

            # basic values change by -col * t as x_q moves by sgn * t
            col = self.T[:, q] * sgn
            step = self.hi[q] - self.lo[q]
            leave = -1
            leave_to_hi = False
            for i in range(self.m):
                a = col[i]
                bi = self.basis[i]
                if a > self.pivot_tol:
                    t, to_hi = (self.x[bi] - self.lo[bi]) / a, False
                elif a < -self.pivot_tol and np.isfinite(self.hi[bi]):
                    t, to_hi = (self.hi[bi] - self.x[bi]) / -a, True
                else:
                    continue
                t = max(t, 0.0)
                if t < step:
                    take = True
                elif t == step and leave >= 0:
                    take = bi < self.basis[leave] if bland else abs(a) > abs(col[leave])
                else:
                    take = False
                if take:
                    step, leave, leave_to_hi = t, i, to_hi
            if not np.isfinite(step):
                return LpStatus.UNBOUNDED

            self.iterations += 1
            streak = streak + 1 if step <= tol else 0
            self.x[self.basis] -= col * step
            if leave < 0:
                self.x[q] = self.hi[q] if sgn > 0 else self.lo[q]
                continue
            self.x[q] += sgn * step
            out = self.basis[leave]
            self.pivot(leave, q)
            self.x[out] = self.hi[out] if leave_to_hi else self.lo[out]
            pivots += 1
            if pivots % REFRESH_EVERY == 0:
                self.refresh()

    def retire_artificials(self):
        """Pivot zero-valued artificials out of the basis and pin them at 0."""
        fa = self.first_art
        for r in range(self.m):
            if self.basis[r] < fa:
                continue
            row = self.T[r, :fa]
            cand = np.flatnonzero((np.abs(row) > 1e-7) & ~self.is_basic[:fa])
            if cand.size:
                q = int(cand[np.argmax(np.abs(row[cand]))])
                out = self.basis[r]
                self.pivot(r, q)
                self.x[out] = 0.0
        self.hi[fa:] = 0.0
        self.x[fa:][~self.is_basic[fa:]] = 0.0
        self.refresh()


def solve_lp(lp, feas_tol: float = FEAS_TOL, pivot_tol: float = PIVOT_TOL,
             max_iter: int | None = None) -> LpSolution:
    """Maximize ``lp.c @ x`` subject to ``lp.G @ x <= lp.h`` and the variable box.

    ``lp`` is a :class:`DenseLP` or any object with a ``to_dense()`` method
    returning one.  Infeasible and iteration-capped solves are reported through
    ``status``, never raised.
    """
    dense = lp.to_dense()
    m, n = dense.G.shape
    if np.any(dense.lo > dense.hi):
        return LpSolution(LpStatus.INFEASIBLE, np.full(n, np.nan), float("nan"))
    if max_iter is None:
        max_iter = 10_000 * (m + n)

    sx = _Simplex(dense, feas_tol, pivot_tol, max_iter)

    if sx.n_art:
        phase1 = np.zeros(sx.S.shape[1])
        phase1[sx.first_art:] = -1.0
        status = sx.run(phase1)
        if status is not LpStatus.OPTIMAL:
            return LpSolution(status, sx.x[:n].copy(), float("nan"), sx.iterations)
        sx.refresh()
        scale = max(1.0, float(np.abs(dense.h).max(initial=0.0)))
        if sx.x[sx.first_art:].sum() > feas_tol * scale:
            return LpSolution(LpStatus.INFEASIBLE, sx.x[:n].copy(), float("nan"), sx.iterations)
        sx.retire_artificials()

    status = sx.run(sx.cost)
    sx.refresh()
    x = np.clip(sx.x[:n], dense.lo, dense.hi)
    if status is not LpStatus.OPTIMAL:
        return LpSolution(status, x, float("nan"), sx.iterations)
    return LpSolution(status, x, float(dense.c @ x), sx.iterations)
