import math

import pytest

from qrelax import CouplingEnvironment, QubitParams

TWO_PI = 2 * math.pi
W5 = TWO_PI * 5e9


@pytest.fixture
def qubit():
    return QubitParams(C=10e-15, L=1e-9, I0=0.3e-6)


@pytest.fixture
def env():
    return CouplingEnvironment(Cg=10e-15, Cc=10e-15)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
