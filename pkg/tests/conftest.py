import numpy as np
import pytest

from hodgelab.families import PrepotentialModel, load_model, preset_names

PRESETS = preset_names()
ORBIT_PRESETS = ["orbit_cubic", "orbit_deformed", "orbit_trivial", "quintic", "theta4"]


@pytest.fixture(scope="session")
def cubic():
    return load_model("cubic")


@pytest.fixture(scope="session")
def two_moduli():
    return load_model("two_moduli")


@pytest.fixture(scope="session")
def quintic():
    return load_model("quintic")


def cubic_free():
    """P = t^3 on the whole upper half-plane."""
    return PrepotentialModel({(3,): 1.0}, name="cubic")


def rng(seed=0):
    return np.random.default_rng(seed)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
