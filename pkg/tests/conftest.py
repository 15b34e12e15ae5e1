import pytest

from toricmu import fixtures as fx


@pytest.fixture(scope="session")
def F1():
    return fx.get("F1")


@pytest.fixture(scope="session")
def F2p():
    return fx.get("F2'")


@pytest.fixture(scope="session")
def F3():
    return fx.get("F3")


@pytest.fixture(scope="session")
def F2():
    return fx.get("F2")


@pytest.fixture(scope="session")
def MF1():
    return fx.get("MF1")


@pytest.fixture(scope="session")
def T3():
    return fx.get("T3")
