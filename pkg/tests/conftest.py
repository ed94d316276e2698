import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

# the four eight-point series used to show PAA's smoothing problem
S1 = [1, -4, 11, 0, 3, -9, 4, 0]
S2 = [-1, 10, -5, 4, -5, 5, -3, 1]
S3 = [2, -1, 3, 0, -5, -4, -2, -1]
S4 = [-8, 10, 17, -15, -18, 9, 4, -7]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def worked_series():
    return [np.array(s, dtype=float) for s in (S1, S2, S3, S4)]


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
