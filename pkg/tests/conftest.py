import sys
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corewalk.graph import build_graph  # noqa: E402

warnings.filterwarnings("ignore", message=".*TBB.*")


@pytest.fixture
def triangle():
    return build_graph([(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def path4():
    return build_graph([(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def two_cliques(size=10, bridge=False):
    edges = []
    for offset in (0, size):
        edges += [(offset + i, offset + j) for i in range(size) for j in range(i + 1, size)]
    if bridge:
        edges.append((0, size))
    return build_graph(edges)
