from pathlib import Path

import numpy as np
import pytest

from qalpha.qimage import RgbImage

DATA = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20170601)


@pytest.fixture
def random_rgb(rng):
    def make(n=16, m=12):
        return RgbImage(rng.integers(0, 256, size=(n, m, 3)).astype(float))
    return make


@pytest.fixture(scope="session")
def data_dir():
    return DATA


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
