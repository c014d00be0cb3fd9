"""FRI-FC problem instances: data types, text format, and a seeded generator.

File format (whitespace separated, ``#`` starts a comment line)::

    m n
    c_1 ... c_n
    a_11 ... a_1n
    ...
    a_m1 ... a_mn
    b_1 ... b_m
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

__all__ = [
    "FriProblem",
    "FuzzyParams",
    "ProblemFormatError",
    "parse_problem",
    "read_problem",
    "write_problem",
    "gen_random",
]


class ProblemFormatError(ValueError):
    """Raised for malformed or out-of-range problem files."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _frozen(a, dtype=float) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FriProblem:
    """Linear objective ``min c'x`` subject to ``max_j a_ij x_j <= b_i``, x in [0,1]^n."""

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    id: str = ""

    def __post_init__(self):
        A = _frozen(self.A)
        b = _frozen(self.b)
        c = _frozen(self.c)
        if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
            raise ValueError(f"A must be a non-empty 2-d matrix, got shape {A.shape}")
        m, n = A.shape
        if b.shape != (m,):
            raise ValueError(f"b must have length {m}, got shape {b.shape}")
        if c.shape != (n,):
            raise ValueError(f"c must have length {n}, got shape {c.shape}")
        if not np.all((A >= 0) & (A <= 1)):
            raise ValueError("entries of A must lie in [0, 1]")
        if not np.all((b >= 0) & (b <= 1)):
            raise ValueError("entries of b must lie in [0, 1]")
        if not np.all(np.isfinite(c)):
            raise ValueError("entries of c must be finite")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def __eq__(self, other):
        # the id is a label only; equality compares the data
        if not isinstance(other, FriProblem):
            return NotImplemented
        return (
            np.array_equal(self.A, other.A)
            and np.array_equal(self.b, other.b)
            and np.array_equal(self.c, other.c)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class FuzzyParams:
    """Tolerances of the fuzzy constraints and objective.

    Parameters
    ----------
    d : array of shape (m,)
        Admissible violation of each inequality, strictly positive.
    d0 : float
        Length of the objective interval ``[z0, z0 + d0]``.
    v : float
        Position of ``z* = c'x*`` inside that interval, ``0 < v < 1``.
    """

    d: np.ndarray
    d0: float = 0.1
    v: float = 0.5

    def __post_init__(self):
        d = _frozen(self.d)
        if d.ndim != 1 or d.size < 1:
            raise ValueError("d must be a non-empty vector")
        if not np.all(d > 0) or not np.all(np.isfinite(d)):
            raise ValueError("every d_i must be finite and > 0")
        if not (self.d0 > 0 and math.isfinite(self.d0)):
            raise ValueError("d0 must be finite and > 0")
        if not 0 < self.v < 1:
            raise ValueError("v must lie in the open interval (0, 1)")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "d0", float(self.d0))
        object.__setattr__(self, "v", float(self.v))

    @classmethod
    def uniform(cls, m: int, d: float = 0.1, d0: float = 0.1, v: float = 0.5) -> "FuzzyParams":
        """Same tolerance ``d`` broadcast to all ``m`` constraints."""
        return cls(d=np.full(m, float(d)), d0=d0, v=v)

    def check(self, p: FriProblem) -> None:
        if self.d.shape != (p.m,):
            raise ValueError(f"d has length {self.d.size}, problem has m={p.m}")

    def __eq__(self, other):
        if not isinstance(other, FuzzyParams):
            return NotImplemented
        return np.array_equal(self.d, other.d) and self.d0 == other.d0 and self.v == other.v

    __hash__ = None


def _content_lines(source: TextIO) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(source, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        yield lineno, text.split()


def _floats(tokens: list[str], lineno: int, what: str) -> list[float]:
    out = []
    for tok in tokens:
        try:
            val = float(tok)
        except ValueError:
            raise ProblemFormatError(f"non-numeric token {tok!r} in {what}", lineno) from None
        if not math.isfinite(val):
            raise ProblemFormatError(f"non-finite value {tok!r} in {what}", lineno)
        out.append(val)
    return out


def parse_problem(source: TextIO, id: str = "") -> FriProblem:
    """Parse a problem from a text stream.

    Raises :class:`ProblemFormatError` (with the offending line number) for
    bad dimensions, non-numeric tokens, or ``a_ij`` / ``b_i`` outside [0, 1].
    """
    lines = _content_lines(source)

    def next_line(what: str) -> tuple[int, list[str]]:
        try:
            return next(lines)
        except StopIteration:
            raise ProblemFormatError(f"unexpected end of input while reading {what}") from None

    lineno, toks = next_line("dimensions")
    if len(toks) != 2:
        raise ProblemFormatError(f"expected 'm n', got {len(toks)} tokens", lineno)
    try:
        m, n = int(toks[0]), int(toks[1])
    except ValueError:
        raise ProblemFormatError(f"dimensions must be integers, got {' '.join(toks)!r}", lineno) from None
    if m < 1 or n < 1:
        raise ProblemFormatError(f"dimensions must be positive, got m={m} n={n}", lineno)

    lineno, toks = next_line("c")
    if len(toks) != n:
        raise ProblemFormatError(f"c: expected {n} values, got {len(toks)}", lineno)
    c = _floats(toks, lineno, "c")

    A = []
    for i in range(m):
        lineno, toks = next_line(f"row {i + 1} of A")
        if len(toks) != n:
            raise ProblemFormatError(f"row {i + 1} of A: expected {n} values, got {len(toks)}", lineno)
        row = _floats(toks, lineno, f"row {i + 1} of A")
        for j, a in enumerate(row):
            if not 0.0 <= a <= 1.0:
                raise ProblemFormatError(f"a[{i + 1},{j + 1}] = {a} outside [0, 1]", lineno)
        A.append(row)

    lineno, toks = next_line("b")
    if len(toks) != m:
        raise ProblemFormatError(f"b: expected {m} values, got {len(toks)}", lineno)
    b = _floats(toks, lineno, "b")
    for i, bi in enumerate(b):
        if not 0.0 <= bi <= 1.0:
            raise ProblemFormatError(f"b[{i + 1}] = {bi} outside [0, 1]", lineno)

    extra = next(lines, None)
    if extra is not None:
        raise ProblemFormatError("trailing data after b", extra[0])

    return FriProblem(A=np.array(A), b=np.array(b), c=np.array(c), id=id)


def read_problem(path) -> FriProblem:
    """Parse a problem file; the id is the file stem."""
    from pathlib import Path

    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return parse_problem(fh, id=path.stem)


def _fmt(x: float) -> str:
    # repr() gives the shortest string that round-trips exactly
    return repr(float(x))


def write_problem(p: FriProblem) -> str:
    """Serialize ``p`` in the text format; exact round-trip through :func:`parse_problem`."""
    out = []
    if p.id:
        out.append(f"# {p.id}")
    out.append(f"{p.m} {p.n}")
    out.append(" ".join(_fmt(v) for v in p.c))
    for row in p.A:
        out.append(" ".join(_fmt(v) for v in row))
    out.append(" ".join(_fmt(v) for v in p.b))
    return "\n".join(out) + "\n"


def gen_random(m: int, n: int, seed: int, id: str | None = None) -> FriProblem:
    """Random instance: ``A``, ``b`` uniform on [0, 1], ``c`` uniform on [-10, 10]."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    A = rng.random((m, n))
    b = rng.random(m)
    c = rng.uniform(-10.0, 10.0, n)
    return FriProblem(A=A, b=b, c=c, id=id if id is not None else f"rand-{m}x{n}-{seed}")
