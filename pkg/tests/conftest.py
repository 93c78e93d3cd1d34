import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from fockmult import (
    Cyclic,
    FreeMonoid,
    Integers,
    NonNegIntegers,
    NonNegVectors,
    symmetric_group,
)


@pytest.fixture
def z3():
    return Cyclic(3)


@pytest.fixture
def c4():
    return Cyclic(4)


@pytest.fixture
def c5():
    return Cyclic(5)


@pytest.fixture
def s3():
    return symmetric_group(3)


@pytest.fixture
def zz():
    return Integers()


@pytest.fixture
def zp():
    return NonNegIntegers()


@pytest.fixture
def v2():
    return NonNegVectors(2)


@pytest.fixture
def free2():
    return FreeMonoid(2)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
