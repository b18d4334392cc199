import pytest

from hecketree import tree


@pytest.fixture(scope="session")
def ball22():
    return tree.build_ball(2, 2, 12)


@pytest.fixture(scope="session")
def ball33():
    return tree.build_ball(3, 3, 10)


@pytest.fixture(scope="session")
def ball23():
    return tree.build_ball(2, 3, 12)
