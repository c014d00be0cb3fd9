"""Problem reduction before linearization.

Three rules, applied in order:

1. *Zeroing* -- ``a_ij`` is reset to 0 when some other row ``k`` already
   bounds ``x_j`` more tightly (``a_ij >= b_i``, ``a_kj > b_k`` and
   ``b_i/a_ij > b_k/a_kj``).  The crisp feasible set is unchanged.
2. *Cost sign* -- columns with ``c_j >= 0`` are fixed to 0.
3. *Inactive cells* -- for the surviving columns, row ``i`` only constrains
   column ``j`` when ``a'_ij > b_i``.  A surviving column with ``c_j < 0``
   that no row constrains is fixed to 1.

Each rule can be switched off (``rules=...``) for invariance testing; with a
rule disabled the corresponding cells or columns are simply kept in the model.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .problem import FriProblem

__all__ = [
    "SimplifiedProblem",
    "first_simplification",
    "second_simplification",
    "third_simplification",
    "simplify",
    "ALL_RULES",
]

ALL_RULES = frozenset({1, 2, 3})


@dataclass(frozen=True)
class SimplifiedProblem:
    """Reduced problem handed to the linearization step.

    ``J_prime`` are the columns surviving the cost-sign rule, ``J_prime_i[i]``
    the columns row ``i`` still constrains, and ``fixed`` maps each eliminated
    column to its value (0 or 1).  ``free`` are the columns left to optimize.
    """

    A_prime: np.ndarray
    J_prime: tuple[int, ...]
    J_prime_i: tuple[frozenset, ...]
    fixed: dict[int, float]
    origin: FriProblem
    rules: frozenset = field(default=ALL_RULES)

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.origin.n) if j not in self.fixed)

    def fixed_point(self) -> np.ndarray:
        """Point with fixed components set and free components 0."""
        x = np.zeros(self.origin.n)
        for j, val in self.fixed.items():
            x[j] = val
        return x

    def cells(self) -> list[tuple[int, int]]:
        """(row, column) pairs that produce an LP row, in row-major order."""
        return [(i, j) for i, cols in enumerate(self.J_prime_i) for j in sorted(cols)]


def first_simplification(p: FriProblem) -> np.ndarray:
    """Return ``A'`` with dominated cells reset to zero."""
    A, b = p.A, p.b
    active = A > b[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        # ratio b_i/a_ij; cells with a_ij = 0 never qualify (a_ij >= b_i needs b_i = 0,
        # and then 0/0 is meaningless) -- they are masked out below
        ratio = np.where(A > 0, b[:, None] / np.where(A > 0, A, 1.0), np.inf)
    tightest = np.where(active, ratio, np.inf).min(axis=0)
    zero = (A >= b[:, None]) & (A > 0) & (ratio > tightest[None, :])
    return np.where(zero, 0.0, A)


def second_simplification(p: FriProblem) -> tuple[tuple[int, ...], frozenset]:
    """Return ``(J', columns fixed to zero)``; ``J' = {j : c_j < 0}``."""
    J_prime = tuple(int(j) for j in np.flatnonzero(p.c < 0))
    zeros = frozenset(int(j) for j in np.flatnonzero(p.c >= 0))
    return J_prime, zeros


def third_simplification(A_prime, b, J_prime) -> tuple[tuple[frozenset, ...], frozenset]:
    """Return ``(J'_i for each row, columns fixed to one)``."""
    A_prime = np.asarray(A_prime, dtype=float)
    b = np.asarray(b, dtype=float)
    J_prime_i = tuple(
        frozenset(j for j in J_prime if A_prime[i, j] > b[i]) for i in range(A_prime.shape[0])
    )
    covered = frozenset().union(*J_prime_i) if J_prime_i else frozenset()
    ones = frozenset(j for j in J_prime if j not in covered)
    return J_prime_i, ones


def simplify(p: FriProblem, rules=ALL_RULES) -> SimplifiedProblem:
    """Apply the selected rules (subset of ``{1, 2, 3}``) in order."""
    rules = frozenset(rules)
    if not rules <= ALL_RULES:
        raise ValueError(f"unknown simplification rules: {sorted(rules - ALL_RULES)}")

    A_prime = first_simplification(p) if 1 in rules else p.A.copy()
    A_prime.setflags(write=False)

    fixed: dict[int, float] = {}
    if 2 in rules:
        J_prime, zeros = second_simplification(p)
        fixed.update({j: 0.0 for j in sorted(zeros)})
    else:
        J_prime = tuple(range(p.n))

    if 3 in rules:
        J_prime_i, ones = third_simplification(A_prime, p.b, J_prime)
        # fixing to 1 only pays off for c_j < 0; without rule 2 the rest stay free
        fixed.update({j: 1.0 for j in sorted(ones) if p.c[j] < 0})
    else:
        # every cell of a surviving column keeps its row (nonzero entries only)
        J_prime_i = tuple(
            frozenset(j for j in J_prime if A_prime[i, j] > 0) for i in range(p.m)
        )

    return SimplifiedProblem(
        A_prime=A_prime,
        J_prime=J_prime,
        J_prime_i=J_prime_i,
        fixed=dict(sorted(fixed.items())),
        origin=p,
        rules=rules,
    )
