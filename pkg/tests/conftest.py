import pytest

from weakunits import models


@pytest.fixture(scope="session")
def shipped():
    return models.shipped()


@pytest.fixture(scope="session")
def zg():
    return models.zg()


@pytest.fixture(scope="session")
def z2p():
    return models.z2p()


@pytest.fixture(scope="session")
def chp():
    return models.chp()


@pytest.fixture(scope="session")
def m3():
    return models.m3()
