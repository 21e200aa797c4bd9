import pytest

from fourslice.polytope4 import make_hypercube, make_pentachoron


@pytest.fixture(scope="session")
def pentachoron():
    return make_pentachoron(2.0)


@pytest.fixture(scope="session")
def hypercube():
    return make_hypercube(2.0)
