import pytest

from helpers import fixture_graph


@pytest.fixture
def path_fixture():
    """The golden 3-node path graph with weights (1, 2) and attributes (2, 0, 1)."""
    return fixture_graph()


@pytest.fixture
def path_fixture_bare():
    """Same topology and weights, no attributes."""
    return fixture_graph(with_attrs=False)
