import pytest

import logfire
from logfire.testing import capfire  # noqa: F401

from src.arrangement import Arrangement


@pytest.fixture(scope='session', autouse=True)
def quiet_logfire():
    logfire.configure(send_to_logfire=False, console=False)


@pytest.fixture
def square() -> Arrangement:
    # the unit square: x1 = 0, x2 = 0, x1 = x0, x2 = x0
    return Arrangement.from_rows(2, [[0, 1, 0], [0, 0, 1], [-1, 1, 0], [-1, 0, 1]])


@pytest.fixture
def concurrent_lines() -> Arrangement:
    return Arrangement.from_rows(2, [[1, 0, 0], [0, 1, 0], [1, 1, 0]])


@pytest.fixture
def p4_forms() -> Arrangement:
    return Arrangement.from_rows(
        4,
        [
            [1, 0, -1, 0, 0],
            [0, -1, 1, 0, 0],
            [0, 1, 0, -1, 0],
            [-1, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ],
    )
