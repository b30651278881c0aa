from pathlib import Path

import pytest

from core.models import HeffterArray
from features.documents import load_array

GOLDEN_DIR = Path(__file__).parent / "golden"

GOLDEN_FILES = {
    (4, 3): "h_4_3.txt",
    (12, 3): "h_12_3.txt",
    (13, 3): "h_13_3.txt",
    (12, 5): "h_12_5.txt",
    (5, 4): "hs_5_4.txt",
    (6, 4): "hs_6_4.txt",
    (7, 4): "hs_7_4.txt",
    (8, 6): "hs_8_6.txt",
}


def golden(n: int, k: int) -> HeffterArray:
    return load_array(GOLDEN_DIR / GOLDEN_FILES[(n, k)])


@pytest.fixture
def h_4_3() -> HeffterArray:
    return golden(4, 3)


@pytest.fixture
def h_13_3() -> HeffterArray:
    return golden(13, 3)


@pytest.fixture
def hs_7_4() -> HeffterArray:
    return golden(7, 4)


@pytest.fixture
def golden_path():
    return lambda name: GOLDEN_DIR / name
