import math
import sys

import numpy as np
import pytest

from hardyq.estimator import quad_rayleigh
from hardyq.geometry import normalize, sample_quadrilaterals, symmetric_dart

DART_BETA = 1.9 * math.pi
DART_GAMMA = 0.045 * math.pi
DART_STEPS = (1 / 64, 1 / 128, 1 / 256)


@pytest.fixture(scope="session")
def sampled_quads():
    """Ten normalized quadrilaterals of each non-convex type."""
    return sample_quadrilaterals(seed=2024, per_type=10)


@pytest.fixture(scope="session")
def dart():
    return normalize(symmetric_dart(DART_BETA, DART_GAMMA))


@pytest.fixture(scope="session")
def dart_refinement(dart):
    """Grid estimates on the 1.9 pi dart for h = 1/64, 1/128, 1/256."""
    return [quad_rayleigh(dart, h) for h in DART_STEPS]


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.LINES:
        terminalreporter.write_line(line)
