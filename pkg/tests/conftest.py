import logging

import numpy as np
import pytest

import seedcomm as sc


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger jit compilation once so timed tests measure the algorithm."""
    g = sc.Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3)])
    op = sc.WalkOperator.stochastic(g)
    p = sc.initial_vector([0], g)
    sc.propagate(op, p)
    sc.WalkOperator.symmetric(g).apply_dense(p.to_dense())
    sc.cut_size(g, [0, 1])
    sc.sweep_conductance(g, [0, 1, 2], 1, 3)


@pytest.fixture(autouse=True)
def quiet_warnings(caplog):
    logging.getLogger("seedcomm").setLevel(logging.ERROR)
    yield


@pytest.fixture
def path4():
    """Path 1-2-3-4 loaded from text, so labels are 1..4, ids 0..3."""
    return sc.load_edge_list(b"1 2\n2 3\n3 4\n")


@pytest.fixture
def k3():
    return sc.Graph.from_edges([(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def two_triangles():
    """Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3."""
    return sc.Graph.from_edges([(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


def random_graph(rng, n, p):
    """Erdos-Renyi draw as a Graph; guarantees at least one edge."""
    iu, iv = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    if not mask.any():
        mask[rng.integers(iu.size)] = True
    return sc.Graph.from_edges(np.column_stack([iu[mask], iv[mask]]), n=n)
