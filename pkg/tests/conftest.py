import random
from fractions import Fraction

import pytest

from addmin import ProblemInstance

EX_EIGEN = [["0.4", "0.6"], ["0.2", "0.5"]]
EX_DEMAND = ["0.8", "0.5"]
EX_SUPER = [["0", "0.6"], ["0.4", "0"]]
EX_SUPER_DEMAND = ["0.2", "0.3"]


@pytest.fixture
def ex_eigen():
    return ProblemInstance.from_values(EX_EIGEN)


@pytest.fixture
def ex_constrained():
    return ProblemInstance.from_values(EX_EIGEN, EX_DEMAND)


@pytest.fixture
def ex_super():
    return ProblemInstance.from_values(EX_SUPER)


@pytest.fixture
def ex_super_demand():
    return ProblemInstance.from_values(EX_SUPER, EX_SUPER_DEMAND)


def lattice_instance(seed: int, n: int = 2, step: int = 20) -> ProblemInstance:
    """Random matrix with entries on the 1/step lattice."""
    rng = random.Random(seed)
    return ProblemInstance.from_values(
        [[Fraction(rng.randint(0, step), step) for _ in range(n)] for _ in range(n)]
    )


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
