import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
GRID_3X3 = np.array([[i, j] for i in range(3) for j in range(3)], dtype=float)

# seed for which the perturbed 3x3 grid has a generically globally rigid critical graph
GGR_GRID_SEED = 9


def perturbed_square(seed, eps=1e-2):
    rng = np.random.default_rng(seed)
    return UNIT_SQUARE + eps * rng.uniform(-1.0, 1.0, size=UNIT_SQUARE.shape)


def ggr_grid_fixture():
    rng = np.random.default_rng(GGR_GRID_SEED)
    return GRID_3X3 + 0.02 * rng.normal(size=GRID_3X3.shape)


def random_triangle(seed):
    return np.random.default_rng(seed).uniform(0.0, 1.0, size=(3, 2))


def largest_angle(T):
    T = np.asarray(T, dtype=float)
    best = 0.0
    for i in range(3):
        u, v = T[(i + 1) % 3] - T[i], T[(i + 2) % 3] - T[i]
        c = u @ v / (np.linalg.norm(u) * np.linalg.norm(v))
        best = max(best, math.acos(max(-1.0, min(1.0, c))))
    return best


EQUILATERAL = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
OBTUSE = np.array([[0.0, 0.1], [-1.0, 0.0], [1.1, 0.0]])
ACUTE = np.array([[0.05, 0.9], [-0.5, 0.0], [0.6, 0.05]])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# filled by test_acceptance; echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
