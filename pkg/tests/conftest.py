import numpy as np
import pytest

from frifc import FuzzyParams, gen_random
from frifc.appendix import appendix_suite

# criterion number -> list of (label, passed, detail), filled by test_acceptance
ACCEPTANCE_RESULTS: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, label: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.setdefault(criterion, []).append((label, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE_RESULTS):
        for label, passed, detail in ACCEPTANCE_RESULTS[crit]:
            line = f"[{'PASS' if passed else 'FAIL'}] {crit:>2}. {label}"
            if detail:
                line += f"  ({detail})"
            tr.write_line(line)


@pytest.fixture(scope="session")
def suite():
    return appendix_suite()


@pytest.fixture(scope="session")
def default_fp():
    return lambda p: FuzzyParams.uniform(p.m, d=0.1, d0=0.1, v=0.5)


def random_instances(count, max_m=12, max_n=12, base_seed=0):
    """Seeded random problems with sizes drawn from the same seed stream."""
    rng = np.random.default_rng(base_seed)
    out = []
    for k in range(count):
        m = int(rng.integers(1, max_m + 1))
        n = int(rng.integers(1, max_n + 1))
        out.append(gen_random(m, n, seed=base_seed * 100_000 + k))
    return out
