"""Max-product composition, closed-form crisp optimum, and membership evaluation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import FriProblem, FuzzyParams

__all__ = [
    "CrispSolution",
    "MembershipReport",
    "max_product_compose",
    "maximum_solution",
    "crisp_optimum",
    "is_feasible",
    "violation_vectors",
    "ramp",
    "evaluate",
    "total_value",
    "total_value_batch",
]


@dataclass(frozen=True)
class CrispSolution:
    x_bar: np.ndarray
    x_star: np.ndarray
    z_star: float


@dataclass(frozen=True)
class MembershipReport:
    """Fuzzy evaluation of one point.

    ``mu_constraints[i]`` is the membership of constraint ``i``; ``mu_F`` is
    their minimum, ``mu_0`` the objective membership and ``mu_T`` the total
    value ``min(mu_0, mu_F)``.  ``ccv`` / ``fcv`` are the crisp and fuzzy
    violation vectors.
    """

    mu_constraints: np.ndarray
    mu_F: float
    mu_0: float
    mu_T: float
    ccv: np.ndarray
    fcv: np.ndarray


def _as_point(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"point must have shape ({n},), got {x.shape}")
    return x


def max_product_compose(A, x) -> np.ndarray:
    """``(A o x)_i = max_j a_ij * x_j``."""
    A = np.asarray(A, dtype=float)
    x = _as_point(x, A.shape[1])
    return (A * x).max(axis=1)


def maximum_solution(p: FriProblem) -> np.ndarray:
    """Greatest point of the crisp feasible set.

    ``x_bar_j = min{b_i / a_ij : a_ij > b_i}``, or 1 when no row restricts
    column ``j``.
    """
    A, b = p.A, p.b
    active = A > b[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(active, b[:, None] / np.where(active, A, 1.0), np.inf)
    x_bar = ratios.min(axis=0)
    return np.where(np.isinf(x_bar), 1.0, x_bar)


def crisp_optimum(p: FriProblem) -> CrispSolution:
    x_bar = maximum_solution(p)
    # c_j == 0 goes to zero: objective-neutral and never tightens a row
    x_star = np.where(p.c < 0, x_bar, 0.0)
    return CrispSolution(x_bar=x_bar, x_star=x_star, z_star=float(p.c @ x_star))


def is_feasible(p: FriProblem, x, tol: float = 1e-12) -> bool:
    """True iff ``A o x <= b + tol`` componentwise (ties count as feasible).

    The default ``tol`` absorbs the rounding of ``(b_i / a_ij) * a_ij``, so
    the maximum solution itself tests feasible.
    """
    return bool(np.all(max_product_compose(p.A, x) <= p.b + tol))


def violation_vectors(p: FriProblem, fp: FuzzyParams, x) -> tuple[np.ndarray, np.ndarray]:
    """Crisp (``CCV``) and fuzzy (``FCV``) constraint violation vectors at ``x``."""
    fp.check(p)
    ax = max_product_compose(p.A, x)
    ccv = np.maximum(0.0, ax - p.b)
    fcv = np.maximum(0.0, ax - (p.b + fp.d))
    return ccv, fcv


def ramp(value, lo, width):
    """Linear membership: 1 at or below ``lo``, 0 at or above ``lo + width``."""
    value = np.asarray(value, dtype=float)
    mu = 1.0 - (value - lo) / width
    return np.clip(mu, 0.0, 1.0)


def evaluate(p: FriProblem, fp: FuzzyParams, z0: float, x) -> MembershipReport:
    """Membership values of ``x``; ``z0`` is the best-case objective value."""
    fp.check(p)
    x = _as_point(x, p.n)
    ax = max_product_compose(p.A, x)
    mu_i = ramp(ax, p.b, fp.d)
    mu_F = float(mu_i.min())
    mu_0 = float(ramp(float(p.c @ x), z0, fp.d0))
    ccv = np.maximum(0.0, ax - p.b)
    fcv = np.maximum(0.0, ax - (p.b + fp.d))
    return MembershipReport(
        mu_constraints=mu_i, mu_F=mu_F, mu_0=mu_0, mu_T=min(mu_0, mu_F), ccv=ccv, fcv=fcv
    )


def total_value(p: FriProblem, fp: FuzzyParams, z0: float, x) -> float:
    """Shortcut for ``evaluate(...).mu_T`` without building the report."""
    ax = (p.A * x).max(axis=1)
    mu_F = np.clip(1.0 - (ax - p.b) / fp.d, 0.0, 1.0).min()
    mu_0 = min(1.0, max(0.0, 1.0 - (float(p.c @ x) - z0) / fp.d0))
    return float(min(mu_0, mu_F))


def total_value_batch(p: FriProblem, fp: FuzzyParams, z0: float, X) -> np.ndarray:
    """Total value of every row of ``X`` (shape ``(k, n)``)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    ax = (p.A[None, :, :] * X[:, None, :]).max(axis=2)
    mu_F = np.clip(1.0 - (ax - p.b) / fp.d, 0.0, 1.0).min(axis=1)
    mu_0 = np.clip(1.0 - (X @ p.c - z0) / fp.d0, 0.0, 1.0)
    return np.minimum(mu_0, mu_F)
