import numpy as np
import pytest

DEPTH1 = np.array([[1.5, 0.0], [0.0, 1.5], [0.5, 0.0], [0.0, 0.5]])
CROSS = np.array([[2.0, 0.0], [-2.0, 0.0], [0.0, 2.0], [0.0, -2.0]])

# lines recorded by the acceptance tests, printed after the run
ACCEPTANCE_LINES: list[str] = []


def gaussian(seed, d, n, trial=0):
    return np.random.default_rng([seed, d, n, trial]).standard_normal((n, d))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
