import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frifc import (
    FriProblem,
    FuzzyParams,
    crisp_optimum,
    evaluate,
    gen_random,
    is_feasible,
    max_product_compose,
    maximum_solution,
    total_value,
    violation_vectors,
)
from frifc.appendix import appendix_problem
from frifc.core import ramp, total_value_batch

A1_XSTAR = np.array([0.1859, 0.1150, 0.0165, 0, 0, 0])
A1_XSS = np.array([0.1964, 0.1215, 0.0174, 0, 0, 0])


def compose_loops(A, x):
    m, n = A.shape
    return np.array([max(A[i, j] * x[j] for j in range(n)) for i in range(m)])


def max_solution_loops(A, b):
    m, n = A.shape
    out = []
    for j in range(n):
        ratios = [b[i] / A[i, j] for i in range(m) if A[i, j] > b[i]]
        out.append(min(ratios) if ratios else 1.0)
    return np.array(out)


@pytest.fixture
def a1():
    return appendix_problem("A.1")


@pytest.fixture
def fp_a1():
    return FuzzyParams.uniform(4, d=0.1, d0=0.1, v=0.5)


def test_compose_zero_vector(a1):
    np.testing.assert_array_equal(max_product_compose(a1.A, np.zeros(6)), np.zeros(4))


def test_compose_at_crisp_optimum_is_tight(a1):
    assert max_product_compose(a1.A, A1_XSTAR)[1] == pytest.approx(0.0161, abs=5e-5)


def test_compose_ones_gives_row_max(a1):
    out = max_product_compose(a1.A, np.ones(6))
    assert out[0] == pytest.approx(0.8372)
    np.testing.assert_array_equal(out, a1.A.max(axis=1))


def test_compose_shape_mismatch(a1):
    with pytest.raises(ValueError):
        max_product_compose(a1.A, np.zeros(5))


@pytest.mark.parametrize("seed", range(20))
def test_compose_matches_loops(seed):
    p = gen_random(5, 7, seed)
    x = np.random.default_rng(seed).random(7)
    np.testing.assert_allclose(max_product_compose(p.A, x), compose_loops(p.A, x), rtol=0, atol=0)


def test_maximum_solution_a1(a1):
    xb = maximum_solution(a1)
    assert xb[0] == pytest.approx(min(0.0161 / 0.0866, 0.6792 / 0.7325, 0.8360 / 0.8851))
    assert xb[0] == pytest.approx(0.1859, abs=5e-5)
    assert xb[1] == pytest.approx(0.0161 / 0.1400)


def test_maximum_solution_unrestricted():
    p = FriProblem(A=np.full((2, 3), 0.2), b=np.array([0.5, 0.3]), c=np.ones(3))
    np.testing.assert_array_equal(maximum_solution(p), np.ones(3))


@pytest.mark.parametrize("seed", range(20))
def test_maximum_solution_matches_loops(seed):
    p = gen_random(6, 6, seed)
    np.testing.assert_allclose(maximum_solution(p), max_solution_loops(p.A, p.b), rtol=1e-15)


def test_crisp_optimum_a1(a1):
    cs = crisp_optimum(a1)
    np.testing.assert_allclose(cs.x_star, A1_XSTAR, atol=5e-5)
    assert cs.z_star == pytest.approx(-0.8741, abs=5e-5)
    assert is_feasible(a1, cs.x_star)


def test_crisp_optimum_a2():
    assert crisp_optimum(appendix_problem("A.2")).z_star == pytest.approx(-11.3228, abs=5e-5)


def test_crisp_optimum_nonnegative_costs():
    p = FriProblem(A=np.full((1, 3), 0.9), b=np.array([0.1]), c=np.array([0.0, 1.0, 2.0]))
    cs = crisp_optimum(p)
    np.testing.assert_array_equal(cs.x_star, np.zeros(3))
    assert cs.z_star == 0.0


def test_feasibility_of_published_points(a1):
    assert is_feasible(a1, crisp_optimum(a1).x_star)
    assert not is_feasible(a1, A1_XSS)


def test_tie_counts_as_feasible():
    p = FriProblem(A=np.array([[0.5]]), b=np.array([0.25]), c=np.array([-1.0]))
    assert is_feasible(p, np.array([0.5]))
    assert not is_feasible(p, np.array([0.5 + 1e-9]))
    assert not is_feasible(p, np.array([0.5 + 1e-12]), tol=0.0)


@pytest.mark.parametrize("seed", range(5))
def test_cube_property(seed):
    p = gen_random(5, 5, 100 + seed)
    xb = maximum_solution(p)
    rng = np.random.default_rng(seed)
    # half the points sampled inside the cube so both verdicts occur
    X = np.vstack([rng.random((500, 5)), rng.random((500, 5)) * xb])
    for x in X:
        assert is_feasible(p, x) == bool(np.all(x <= xb))


@pytest.mark.parametrize("seed", range(15))
def test_crisp_optimum_beats_feasible_grid(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    p = gen_random(int(rng.integers(1, 5)), n, 500 + seed)
    cs = crisp_optimum(p)
    axis = np.linspace(0, 1, 21)
    for x in itertools.product(axis, repeat=n):
        x = np.array(x)
        if is_feasible(p, x):
            assert cs.z_star <= p.c @ x + 1e-12


def test_violation_vectors_a1(a1, fp_a1):
    ccv, fcv = violation_vectors(a1, fp_a1, A1_XSS)
    np.testing.assert_allclose(ccv, [0, 0.0009, 0, 0], atol=2e-4)
    np.testing.assert_array_equal(fcv, np.zeros(4))


def test_violation_vectors_a3():
    p = appendix_problem("A.3")
    fp = FuzzyParams.uniform(p.m)
    x = np.array([0, 0.1015, 0, 0.1383, 0, 0.1588])
    ccv, _ = violation_vectors(p, fp, x)
    np.testing.assert_allclose(ccv, [0, 0, 0, 0, 0.0023, 0], atol=2e-4)


def test_violation_vectors_zero_point():
    p = gen_random(4, 4, 1)
    ccv, fcv = violation_vectors(p, FuzzyParams.uniform(4), np.zeros(4))
    assert not ccv.any() and not fcv.any()


def test_evaluate_a1(a1, fp_a1):
    z0 = -0.8741 - 0.5 * 0.1
    rep = evaluate(a1, fp_a1, z0, A1_XSS)
    # the point is printed to 4 decimals; memberships move up to ~10x that
    assert rep.mu_F == pytest.approx(0.9910, abs=2e-3)
    assert rep.mu_0 == pytest.approx(0.9910, abs=2e-3)
    assert rep.mu_T == min(rep.mu_F, rep.mu_0)


def test_evaluate_crisp_optimum_half(a1, fp_a1):
    cs = crisp_optimum(a1)
    rep = evaluate(a1, fp_a1, cs.z_star - 0.05, cs.x_star)
    assert rep.mu_0 == pytest.approx(0.5)
    assert rep.mu_F == 1.0


def test_evaluate_all_satisfied():
    p = FriProblem(A=np.array([[0.5]]), b=np.array([0.5]), c=np.array([-1.0]))
    rep = evaluate(p, FuzzyParams.uniform(1), -1.0, np.array([1.0]))
    assert (rep.mu_F, rep.mu_0, rep.mu_T) == (1.0, 1.0, 1.0)


def test_ramp_is_affine_between_breakpoints():
    lo, w = 0.3, 0.1
    t = np.linspace(0, 1, 100)
    np.testing.assert_allclose(ramp(lo + t * w, lo, w), 1 - t, atol=1e-12)
    assert ramp(lo, lo, w) == 1.0 and ramp(lo + w, lo, w) == 0.0
    assert ramp(lo - 5, lo, w) == 1.0 and ramp(lo + 5, lo, w) == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_total_value_shortcuts_agree(seed):
    p = gen_random(6, 5, seed)
    fp = FuzzyParams.uniform(6, d=0.2, d0=0.5)
    z0 = crisp_optimum(p).z_star - 0.25
    X = np.random.default_rng(seed).random((50, 5)) * 0.5
    batch = total_value_batch(p, fp, z0, X)
    for x, v in zip(X, batch):
        assert total_value(p, fp, z0, x) == pytest.approx(v, abs=1e-15)
        assert evaluate(p, fp, z0, x).mu_T == pytest.approx(v, abs=1e-15)


seeds = st.integers(0, 2**32 - 1)


@given(seeds, st.floats(0.0, 1.0), st.integers(0, 5))
@settings(max_examples=200, deadline=None)
def test_compose_monotone(seed, step, j):
    p = gen_random(4, 6, seed)
    x = np.random.default_rng(seed).random(6) * 0.5
    y = x.copy()
    y[j] += step * (1 - y[j])
    assert np.all(max_product_compose(p.A, y) >= max_product_compose(p.A, x))


@given(seeds, st.floats(0.01, 1.0))
@settings(max_examples=200, deadline=None)
def test_membership_matches_ccv(seed, d):
    p = gen_random(5, 4, seed)
    fp = FuzzyParams.uniform(5, d=d)
    x = np.random.default_rng(seed).random(4)
    rep = evaluate(p, fp, -1.0, x)
    inside = rep.ccv <= fp.d
    np.testing.assert_allclose(rep.mu_constraints[inside], 1 - rep.ccv[inside] / d, atol=1e-12)
    assert np.all(rep.mu_constraints[~inside] == 0)
    assert 0 <= rep.mu_T <= 1


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_cube_property_hypothesis(seed):
    p = gen_random(4, 3, seed)
    xb = maximum_solution(p)
    assert is_feasible(p, xb)
    X = np.random.default_rng(seed).random((50, 3))
    for x in X:
        assert is_feasible(p, x) == bool(np.all(x <= xb))
