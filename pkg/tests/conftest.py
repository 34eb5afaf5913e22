import pytest

from hypertile.grouptool import load_group


@pytest.fixture(scope="session")
def z():
    return load_group("z")


@pytest.fixture(scope="session")
def z2():
    return load_group("z2")


@pytest.fixture(scope="session")
def f2():
    return load_group("f2")


@pytest.fixture(scope="session")
def genus2():
    return load_group("genus2")
