import pathlib
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from helpers import table1_dataset  # noqa: E402

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def table1():
    return table1_dataset()


@pytest.fixture
def example1_csv():
    return DATA_DIR / "example1.csv"


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
