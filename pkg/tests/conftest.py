import numpy as np
import pytest

from pso_hyper import FitnessSpec

FUNCTIONS = {
    "f1": FitnessSpec("f1"),
    "f2": FitnessSpec("f2"),
    "f3": FitnessSpec("f3", x=0.5, y=0.25),
}


@pytest.fixture(params=sorted(FUNCTIONS))
def fitness(request):
    return FUNCTIONS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
