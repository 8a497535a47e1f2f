import pytest

from exrep.goldens import bundled_algebra


@pytest.fixture(scope="session")
def a3():
    return bundled_algebra("a3")


@pytest.fixture(scope="session")
def a3_ab():
    return bundled_algebra("a3_ab")


@pytest.fixture(scope="session")
def cycle3():
    return bundled_algebra("cycle3")


@pytest.fixture(scope="session")
def cycle3_ab():
    return bundled_algebra("cycle3_ab")


@pytest.fixture(scope="session")
def a42():
    return bundled_algebra("a42")
