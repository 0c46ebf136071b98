import numpy as np
import pytest

from dimerlab.kasteleyn import kasteleyn_signs
from dimerlab.torus import builtin, overlay


@pytest.fixture(scope="session")
def weave():
    return builtin("weave")


@pytest.fixture(scope="session")
def triaxial():
    return builtin("triaxial")


@pytest.fixture(scope="session")
def weave_system(weave):
    return kasteleyn_signs(overlay(weave))


@pytest.fixture(scope="session")
def triaxial_system(triaxial):
    return kasteleyn_signs(overlay(triaxial))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
