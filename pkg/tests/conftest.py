import random

import pytest

from shuffleforge import AlgebraConfig


@pytest.fixture
def c1():
    return AlgebraConfig(1)


@pytest.fixture
def c2():
    return AlgebraConfig(2)


@pytest.fixture
def c3():
    return AlgebraConfig(3)


@pytest.fixture
def rng():
    return random.Random(20260810)
