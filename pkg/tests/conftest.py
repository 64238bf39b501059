import numpy as np
import pytest

from cayleygap import make_group


@pytest.fixture(scope="session")
def z5():
    return make_group("cyclic(5)")


@pytest.fixture(scope="session")
def z7():
    return make_group("cyclic(7)")


@pytest.fixture(scope="session")
def z12():
    return make_group("cyclic(12)")


@pytest.fixture(scope="session")
def d4():
    return make_group("dihedral(4)")


@pytest.fixture(scope="session")
def d6():
    return make_group("dihedral(6)")


@pytest.fixture(scope="session")
def a5():
    return make_group('permutation_closure(["(1 2 3 4 5)", "(1 2 3)"])')


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
