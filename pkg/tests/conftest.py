from typing import NamedTuple

import numpy as np
import pytest
from loguru import logger

from loccqss.code import identity_code, linear_code, reed_solomon_code, repetition_code
from loccqss.gf import field_new
from loccqss.types import LinearCode

F2 = field_new(2)
F3 = field_new(3)
F4 = field_new(2, 2)


class CatalogEntry(NamedTuple):
    name: str
    code: LinearCode
    d: int
    mds: bool


CATALOG = [
    CatalogEntry("rep_3_1_q2", repetition_code(F2, 3), 3, True),
    CatalogEntry("rep_4_1_q3", repetition_code(F3, 4), 4, True),
    CatalogEntry("rep_3_1_q4", repetition_code(F4, 3), 3, True),
    CatalogEntry("parity_3_2_q3", linear_code(F3, [[1, 0, 1], [0, 1, 1]]), 2, True),
    CatalogEntry("parity_3_2_q2", linear_code(F2, [[1, 0, 1], [0, 1, 1]]), 2, True),
    CatalogEntry("split_4_2_q2", linear_code(F2, [[1, 0, 1, 0], [0, 1, 0, 1]]), 2, False),
    CatalogEntry("identity_2_2_q2", identity_code(F2, 2), 1, True),
    CatalogEntry("rs_4_2_q4", reed_solomon_code(F4, 4, 2), 3, True),
    CatalogEntry("code_5_2_q2", linear_code(F2, [[1, 0, 1, 1, 0], [0, 1, 0, 1, 1]]), 3, False),
]


@pytest.fixture(params=CATALOG, ids=[entry.name for entry in CATALOG])
def catalog_entry(request) -> CatalogEntry:
    return request.param


@pytest.fixture
def f2():
    return F2


@pytest.fixture
def f3():
    return F3


@pytest.fixture
def f4():
    return F4


@pytest.fixture
def rep3(f2) -> LinearCode:
    """The [3,1,3]_2 repetition code G = (1 1 1)."""
    return repetition_code(f2, 3)


@pytest.fixture
def parity_q3(f3) -> LinearCode:
    return linear_code(f3, [[1, 0, 1], [0, 1, 1]])


@pytest.fixture
def parity_q2(f2) -> LinearCode:
    return linear_code(f2, [[1, 0, 1], [0, 1, 1]])


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def caplog_loguru():
    """Collect loguru messages at WARNING and above."""
    messages = []
    handler_id = logger.add(messages.append, level="WARNING", format="{message}")
    yield messages
    logger.remove(handler_id)
