import pytest

from slnav import assemble_dataset, enumerate_connected


@pytest.fixture(scope="session")
def tiny_samples():
    """All samples over the connected 4- and 5-node classes."""
    graphs = enumerate_connected(4) + enumerate_connected(5)
    return assemble_dataset(graphs, 10**9, seed=0)
