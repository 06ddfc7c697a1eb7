"""Dataset files and seeded synthetic stand-ins.

Real datasets are never downloaded. :func:`dataset_path` looks for them in
``$COREWALK_DATA_DIR`` (default ``./data``):

- Cora: ``cora.cites`` or ``cora.edges`` (citation edge list)
- Facebook (SNAP ego-Facebook): ``facebook_combined.txt`` or ``.txt.gz``

The synthetic generators mimic the core-shell profile of those graphs so the
pipeline can be exercised without them; they are not substitutes for the
published numbers.
"""

from __future__ import annotations

import gzip
import os
from pathlib import Path

import numpy as np

from .graph import Graph, build_graph, from_edge_array, largest_connected_component, parse_edge_list

DATASET_FILES = {
    "cora": ("cora.cites", "cora.edges", "cora.txt"),
    "facebook": ("facebook_combined.txt", "facebook_combined.txt.gz", "facebook.edges"),
}


def data_dir() -> Path:
    return Path(os.environ.get("COREWALK_DATA_DIR", "data"))


def dataset_path(name: str) -> Path | None:
    for fname in DATASET_FILES[name]:
        p = data_dir() / fname
        if p.is_file():
            return p
    return None


def load_edge_file(path) -> Graph:
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rb") as fh:
        return build_graph(parse_edge_list(fh))


def load_dataset(name: str) -> Graph:
    """Full graph (before LCC reduction) of a named dataset, if present on disk."""
    path = dataset_path(name)
    if path is None:
        raise FileNotFoundError(
            f"dataset {name!r} not found; place one of {DATASET_FILES[name]} in {data_dir()}/")
    return load_edge_file(path)


def _labelled(g: Graph, prefix: str) -> Graph:
    g = largest_connected_component(g)
    return from_edge_array(g.num_nodes, g.edges(), [f"{prefix}{i}" for i in range(g.num_nodes)])


def facebook_like(seed: int = 0, num_nodes: int = 4039) -> Graph:
    """Dense overlapping friend circles: ~4k nodes, ~90k edges, degeneracy ~115.

    One ~160-node circle forms the top core; the remaining circles have
    mean internal degrees between 4 and 90, joined by sparse ties that favour
    a few heavy-tailed hubs.
    """
    rng = np.random.default_rng(seed)
    top = min(160, num_nodes // 4)
    blocks = [(top, 0.82)]
    left = num_nodes - top
    while left > 0:
        size = int(min(left, rng.integers(40, 350)))
        mean_deg = float(rng.choice([4, 8, 15, 25, 40, 60, 75, 90]))
        blocks.append((size, min(1.0, mean_deg / max(size - 1, 1))))
        left -= size
    parts = []
    start = 0
    for size, p in blocks:
        iu, ju = np.triu_indices(size, 1)
        keep = rng.random(len(iu)) < p
        parts.append(np.column_stack([iu[keep], ju[keep]]) + start)
        start += size
    ties = rng.integers(1, 4, size=num_nodes)
    weight = rng.pareto(1.5, size=num_nodes) + 1
    src = np.repeat(np.arange(num_nodes), ties)
    dst = rng.choice(num_nodes, size=len(src), p=weight / weight.sum())
    parts.append(np.column_stack([src, dst]))
    return _labelled(from_edge_array(num_nodes, np.concatenate(parts)), "fb")


def cora_like(seed: int = 0, num_nodes: int = 2708) -> Graph:
    """Sparse citation-style graph: ~2.5k-node LCC, ~5k edges, degeneracy 3-5.

    Nodes join topical communities and cite 1-3 earlier nodes of the
    same community, chosen preferentially by citation count; a small share
    of citations cross communities.
    """
    rng = np.random.default_rng(seed)
    n_comm = 7
    comm = rng.integers(n_comm, size=num_nodes)
    cites = rng.choice([1, 2, 3], size=num_nodes, p=[0.45, 0.35, 0.20])
    deg = np.ones(num_nodes)
    members = [[] for _ in range(n_comm)]
    edges = []
    for v in range(num_nodes):
        c = comm[v]
        pool = members[c]
        if pool:
            k = min(cites[v], len(pool))
            for _ in range(k):
                if rng.random() < 0.1 and v > 1:
                    u = int(rng.integers(v))
                else:
                    cand = np.asarray(pool)
                    w = deg[cand]
                    u = int(cand[rng.choice(len(cand), p=w / w.sum())])
                edges.append((v, u))
                deg[u] += 1
                deg[v] += 1
        elif v > 0:
            u = int(rng.integers(v))
            edges.append((v, u))
        pool.append(v)
    # stray components, as in the real file
    base = from_edge_array(num_nodes, np.asarray(edges))
    return _labelled(base, "p")
