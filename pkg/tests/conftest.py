import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from topodist import ExtendedDiagram  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def random_points(rng, n, scale=10.0):
    b = rng.uniform(0, scale, n)
    return np.column_stack((b, b + rng.uniform(0, scale / 2, n)))


def random_extended(rng, max_points=8, max_dim=2, scale=10.0):
    k = int(rng.integers(0, max_dim + 1))
    return ExtendedDiagram.from_arrays([random_points(rng, int(rng.integers(0, max_points + 1)), scale) for _ in range(k + 1)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
