import random

import pytest

from cremona3.field import PrimeField


@pytest.fixture
def F():
    """Default field F_(2^31 - 1)."""
    return PrimeField()


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def F101():
    return PrimeField(101)


@pytest.fixture
def rng():
    return random.Random(12345)
