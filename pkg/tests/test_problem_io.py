import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from frifc import FriProblem, FuzzyParams, ProblemFormatError, gen_random, parse_problem, read_problem, write_problem
from frifc.appendix import SUITE_IDS, appendix_problem


def parse(text):
    return parse_problem(io.StringIO(text))


def test_appendix_a1_values():
    p = appendix_problem("A.1")
    assert (p.m, p.n) == (4, 6)
    assert p.c[0] == pytest.approx(-1.7005)
    assert p.A[0, 0] == pytest.approx(0.1359)
    assert p.b[0] == pytest.approx(0.2014)
    assert p.id == "A.1"


@pytest.mark.parametrize("pid", SUITE_IDS)
def test_appendix_parses_in_range(pid):
    p = appendix_problem(pid)
    assert p.A.shape == (p.m, p.n)
    assert np.all((p.A >= 0) & (p.A <= 1))
    assert np.all((p.b >= 0) & (p.b <= 1))
    assert np.all(np.abs(p.c) <= 10)


def test_boundary_instance():
    p = parse("1 1\n0\n0\n0\n")
    assert (p.m, p.n) == (1, 1)
    assert p.A[0, 0] == 0 and p.b[0] == 0 and p.c[0] == 0


def test_comments_and_blank_lines_are_skipped():
    p = parse("# header\n\n2 1\n-1\n0.5\n# mid\n0.25\n0.1 0.2\n")
    np.testing.assert_array_equal(p.A, [[0.5], [0.25]])


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("1 1\n-1\n1.2\n0.5\n", 3, "outside [0, 1]"),
        ("1 1\n-1\n0.5\n-0.1\n", 4, "outside [0, 1]"),
        ("1 1\n-1\nabc\n0.5\n", 3, "non-numeric"),
        ("1\n-1\n0.5\n0.5\n", 1, "expected 'm n'"),
        ("x 1\n-1\n0.5\n0.5\n", 1, "integers"),
        ("0 1\n-1\n0.5\n", 1, "positive"),
        ("1 2\n-1\n0.5 0.5\n0.5\n", 2, "expected 2 values"),
        ("1 2\n-1 2\n0.5\n0.5\n", 3, "expected 2 values"),
        ("1 1\n-1\n0.5\n0.5 0.1\n", 4, "expected 1 values"),
        ("1 1\n-1\n0.5\n0.5\n7\n", 5, "trailing"),
        ("1 1\nnan\n0.5\n0.5\n", 2, "non-finite"),
    ],
)
def test_format_errors_carry_line(text, line, fragment):
    with pytest.raises(ProblemFormatError) as exc:
        parse(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
    assert f"line {line}" in str(exc.value)


def test_truncated_input():
    with pytest.raises(ProblemFormatError, match="unexpected end"):
        parse("2 2\n-1 -1\n0.5 0.5\n")


def test_read_problem_uses_stem(tmp_path):
    path = tmp_path / "a1.txt"
    path.write_text(write_problem(appendix_problem("A.1")))
    p = read_problem(path)
    assert p.id == "a1"
    assert p == appendix_problem("A.1")


def test_read_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_problem(tmp_path / "missing.txt")


@pytest.mark.parametrize("pid", SUITE_IDS)
def test_round_trip_appendix(pid):
    p = appendix_problem(pid)
    q = parse(write_problem(p))
    assert q == p
    assert q.id == ""  # id lives in a comment, not in the data


def test_round_trip_generated_and_negative_costs():
    p = gen_random(10, 10, seed=3)
    q = parse(write_problem(p))
    np.testing.assert_array_equal(q.A, p.A)
    np.testing.assert_array_equal(q.c, p.c)
    assert np.any(q.c < 0)
    assert np.array_equal(np.sign(q.c), np.sign(p.c))


unit = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def problems(draw, max_m=6, max_n=6):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    A = draw(arrays(float, (m, n), elements=unit))
    b = draw(arrays(float, m, elements=unit))
    c = draw(arrays(float, n, elements=st.floats(-10.0, 10.0, allow_nan=False)))
    return FriProblem(A=A, b=b, c=c)


@given(problems())
@settings(max_examples=100, deadline=None)
def test_round_trip_property(p):
    q = parse(write_problem(p))
    assert q == p


def test_generator_determinism():
    assert gen_random(4, 6, 42) == gen_random(4, 6, 42)
    assert gen_random(4, 6, 42) != gen_random(4, 6, 43)


def test_generator_ranges():
    p = gen_random(10, 10, 7)
    assert p.A.shape == (10, 10)
    assert np.all((p.A >= 0) & (p.A <= 1))
    assert np.all((p.c >= -10) & (p.c <= 10))
    q = gen_random(1, 1, 0)
    assert (q.m, q.n) == (1, 1)


@pytest.mark.parametrize(
    "A, b, c",
    [
        ([[1.5]], [0.5], [1.0]),
        ([[0.5]], [1.5], [1.0]),
        ([[0.5, 0.5]], [0.5], [1.0]),
        ([[0.5]], [0.5, 0.1], [1.0]),
        ([[np.nan]], [0.5], [1.0]),
        ([[0.5]], [0.5], [np.inf]),
    ],
)
def test_problem_validation(A, b, c):
    with pytest.raises(ValueError):
        FriProblem(A=np.array(A), b=np.array(b), c=np.array(c))


def test_problem_arrays_are_read_only():
    p = gen_random(2, 2, 0)
    with pytest.raises(ValueError):
        p.A[0, 0] = 0.3


@pytest.mark.parametrize(
    "kwargs",
    [dict(d=[0.0]), dict(d=[-0.1]), dict(d=[0.1], d0=0.0), dict(d=[0.1], v=0.0), dict(d=[0.1], v=1.0), dict(d=[])],
)
def test_fuzzy_params_validation(kwargs):
    kwargs["d"] = np.array(kwargs["d"], dtype=float)
    with pytest.raises(ValueError):
        FuzzyParams(**kwargs)


def test_fuzzy_params_shape_check():
    fp = FuzzyParams.uniform(3)
    with pytest.raises(ValueError, match="m=2"):
        fp.check(gen_random(2, 2, 0))
