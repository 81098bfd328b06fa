from random import Random

import pytest

from wickred.poly import LaurentElem, VarSpace
from wickred.wick import StarContext


@pytest.fixture
def sp1():
    return VarSpace.cpn(1)


@pytest.fixture
def sp1d():
    return VarSpace.dn(1)


@pytest.fixture
def ctx1(sp1):
    return StarContext(space=sp1, K=4)


@pytest.fixture
def ctx1d(sp1d):
    return StarContext(space=sp1d, K=4)


@pytest.fixture
def rng():
    return Random(20240811)


@pytest.fixture
def phi(sp1):
    """z0 zb0 / x, the workhorse degree-(0,0) element."""
    z0 = LaurentElem.variable(sp1, sp1.iz(0))
    zb0 = LaurentElem.variable(sp1, sp1.izb(0))
    return z0 * zb0 * LaurentElem.x_power(sp1, 1).inverse()
