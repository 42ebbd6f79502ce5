import numpy as np
import pytest

from kmgwo import Bounds, Problem
from kmgwo.problems import sphere

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def _const7(x):
    return 7.0


@pytest.fixture
def sphere10():
    return sphere()


@pytest.fixture
def const_problem():
    return Problem(name="const7", bounds=Bounds.uniform(-5.0, 5.0, 3), objective=_const7)


@pytest.fixture
def rng_np():
    return np.random.default_rng(12345)
