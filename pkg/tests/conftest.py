"""pytest fixtures"""

import numpy as np
import pytest

from hots.graph.loader import Graph, complete_graph
from hots.tensors.builtins import P1, P2, example61
from hots.tensors.dense import DenseTensor3, convex_combination, random_stochastic
from hots.tensors.io import write_tensor


def mixed_with_uniform(n: int, weight: float, seed: int) -> DenseTensor3:
    """weight * random + (1 - weight) * uniform; T <= 2 weight"""
    return convex_combination(weight, random_stochastic(n, seed), DenseTensor3.uniform(n))


@pytest.fixture
def example_tensor():
    return example61()


@pytest.fixture
def p1():
    return P1()


@pytest.fixture
def p2():
    return P2()


@pytest.fixture
def contractive():
    """n = 4 with T, T_L + T_R <= 0.8"""
    return mixed_with_uniform(4, 0.4, seed=7)


@pytest.fixture
def strongly_contractive():
    """n = 3 with T_L + T_R <= 0.4"""
    return mixed_with_uniform(3, 0.2, seed=11)


@pytest.fixture
def k3() -> Graph:
    return complete_graph(3)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def path_graph() -> Graph:
    return Graph.from_edges(4, [0, 1, 2], [1, 2, 3])


@pytest.fixture
def edge_file(tmp_path):
    """K4 as a 1-based edge list"""
    path = tmp_path / "k4.txt"
    path.write_text("# K4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    return str(path)


@pytest.fixture
def tensor_file(tmp_path, contractive):
    path = tmp_path / "contractive.tensor"
    write_tensor(contractive, path)
    return str(path)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
