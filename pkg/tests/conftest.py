import pytest

import cubeshadow as cs
from cubeshadow.moments import hull_cross_check


@pytest.fixture(scope="session")
def zeta4():
    return cs.zeta4_quadrature()


@pytest.fixture(scope="session")
def moment_suite():
    return cs.moment_integral_suite()


@pytest.fixture(scope="session")
def mc_1e6():
    return cs.mc_estimate(4, 1_000_000, seed=25)


@pytest.fixture(scope="session")
def octagon_1e6():
    return cs.mc_octagon(1_000_000, seed=214)


@pytest.fixture(scope="session")
def hull_check_1e3():
    return hull_cross_check(1000, seed=11)
