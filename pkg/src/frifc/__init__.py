"""Fuzzy relation inequalities with fuzzy constraints under max-product composition.

Exact super-optimum via a linear reformulation solved with a bounded-variable
simplex, plus metaheuristic baselines and a benchmark harness.
"""
from .core import (
    CrispSolution,
    MembershipReport,
    crisp_optimum,
    evaluate,
    is_feasible,
    max_product_compose,
    maximum_solution,
    total_value,
    violation_vectors,
)
from .heuristics import ALGORITHMS, HeuristicConfig, RunTrace, default_configs, run_heuristic
from .linearize import DEFAULT_RULES, SolveReport, build_lp, maximin_bisection, solve_fri_fc
from .lp import DenseLP, LpError, LpSolution, LpStatus, solve_lp
from .problem import (
    FriProblem,
    FuzzyParams,
    ProblemFormatError,
    gen_random,
    parse_problem,
    read_problem,
    write_problem,
)
from .simplify import ALL_RULES, SimplifiedProblem, simplify

__version__ = "0.1.0"
