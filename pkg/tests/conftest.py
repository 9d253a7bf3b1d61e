import numpy as np
import pytest

from recomb import build_expansion_matrix


@pytest.fixture(scope="session")
def E24():
    return build_expansion_matrix(2, 4)


@pytest.fixture(scope="session")
def E35():
    return build_expansion_matrix(3, 5)


@pytest.fixture(scope="session")
def E37():
    return build_expansion_matrix(3, 7)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
