import numpy as np

from .exceptions import ConfigError, EmptyGraphError
from .graph import Graph


def check_graph(X, require_edges=True) -> Graph:
    if not isinstance(X, Graph):
        raise TypeError(f"expected a corewalk Graph, got {type(X).__name__}")
    if X.num_nodes == 0:
        raise EmptyGraphError("graph has no nodes")
    if require_edges and X.num_edges == 0:
        raise EmptyGraphError("graph has no edges")
    return X


def check_node_ids(nodes, num_nodes) -> np.ndarray:
    arr = np.asarray(nodes)
    if arr.dtype.kind not in "iu":
        raise TypeError("node ids must be integers")
    if arr.size and (arr.min() < 0 or arr.max() >= num_nodes):
        raise IndexError(f"node id out of range 0..{num_nodes - 1}")
    return arr.astype(np.int64)


def check_positive_int(name, value, minimum=1) -> int:
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)
