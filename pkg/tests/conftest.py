import pytest

from qtflows.graph import FlowNetwork, complete, from_binary, from_degree_sequence


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("QTFLOWS_PROFILE", "QTFLOWS_SCAN_NMAX", "QTFLOWS_WORKERS"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def k3():
    return complete(2)


@pytest.fixture
def k4():
    return complete(3)


@pytest.fixture
def g43221():
    return from_binary((1, 0, 1, 0))


@pytest.fixture
def g3322():
    return from_degree_sequence((3, 3, 2, 2))


@pytest.fixture
def k5_minus_edge():
    return FlowNetwork.complete(4).without_edges([(2, 1)])
