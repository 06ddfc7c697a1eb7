"""Undirected, unweighted graphs in compressed sparse row form.

Nodes are dense integers ``0..n-1``. The original identifiers read from an
edge-list file are kept in ``Graph.labels`` so results can be reported
against them.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .exceptions import EmptyGraphError, ParseError

COMMENT_PREFIXES = ("#", "%")


@dataclass
class EdgeList:
    """Raw ``(source, target)`` identifier pairs in file order."""

    pairs: list[tuple[str, str]]
    comments: int = 0

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph.

    ``indices[indptr[u]:indptr[u + 1]]`` holds the neighbours of ``u`` in
    ascending order; every edge is stored once in each direction.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...] | None = None
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def num_nodes(self) -> int:
        return len(self.indptr) - 1

    @property
    def num_edges(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, u: int) -> int:
        self._check_node(u)
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        self._check_node(u)
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        return has_edge(self, u, v)

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges with ``u < v``, sorted lexicographically."""
        src = np.repeat(np.arange(self.num_nodes, dtype=np.int64), self.degrees)
        dst = self.indices.astype(np.int64)
        mask = src < dst
        return np.column_stack([src[mask], dst[mask]])

    def label(self, u: int) -> str:
        self._check_node(u)
        return self.labels[u] if self.labels is not None else str(u)

    def node_labels(self) -> list[str]:
        if self.labels is not None:
            return list(self.labels)
        return [str(u) for u in range(self.num_nodes)]

    def to_scipy(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        n = self.num_nodes
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def to_edge_list_text(self) -> str:
        labels = self.node_labels()
        return "".join(f"{labels[u]} {labels[v]}\n" for u, v in self.edges())

    def _check_node(self, u):
        if not 0 <= u < self.num_nodes:
            raise IndexError(f"node {u} out of range for graph with {self.num_nodes} nodes")

    def __repr__(self):
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"


def from_edge_array(num_nodes: int, edges: np.ndarray, labels: Sequence[str] | None = None) -> Graph:
    """Build a Graph from an ``(m, 2)`` integer array over ``0..num_nodes-1``.

    Self-loops are dropped and duplicate or reversed edges collapsed; the
    counts are recorded in ``Graph.stats``.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if len(edges) and (edges.min() < 0 or edges.max() >= num_nodes):
        raise IndexError("edge endpoint out of range")
    loops = edges[:, 0] == edges[:, 1]
    e = edges[~loops]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    keys = np.unique(lo * num_nodes + hi)
    lo, hi = keys // num_nodes, keys % num_nodes
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(num_nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=num_nodes), out=indptr[1:])
    stats = {
        "self_loops_removed": int(loops.sum()),
        "duplicates_removed": int(len(e) - len(keys)),
    }
    return Graph(indptr, dst.astype(np.int32), tuple(labels) if labels is not None else None, stats)


def parse_edge_list(text) -> EdgeList:
    """Parse whitespace-separated edge-list text.

    ``text`` may be ``bytes``, ``str`` or an open file. Lines starting with
    ``#`` or ``%`` are comments; tokens after the second are ignored.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if isinstance(text, str):
        text = io.StringIO(text)
    pairs = []
    comments = 0
    for lineno, raw in enumerate(text, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line:
            continue
        if line.startswith(COMMENT_PREFIXES):
            comments += 1
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(f"expected two node ids, got {line!r}", lineno)
        pairs.append((tokens[0], tokens[1]))
    return EdgeList(pairs, comments)


def build_graph(edges: EdgeList | Iterable[tuple]) -> Graph:
    """Map external ids to dense ids (first appearance order) and build the graph."""
    pairs = edges.pairs if isinstance(edges, EdgeList) else [(str(a), str(b)) for a, b in edges]
    if not pairs:
        raise EmptyGraphError("edge list is empty")
    ids: dict[str, int] = {}
    arr = np.empty((len(pairs), 2), dtype=np.int64)
    for i, (a, b) in enumerate(pairs):
        arr[i, 0] = ids.setdefault(a, len(ids))
        arr[i, 1] = ids.setdefault(b, len(ids))
    return from_edge_array(len(ids), arr, list(ids))


def read_graph(path) -> Graph:
    with open(path, "rb") as fh:
        return build_graph(parse_edge_list(fh))


def has_edge(g: Graph, u: int, v: int) -> bool:
    g._check_node(u)
    g._check_node(v)
    nbrs = g.indices[g.indptr[u]:g.indptr[u + 1]]
    i = np.searchsorted(nbrs, v)
    return bool(i < len(nbrs) and nbrs[i] == v)


def induced_subgraph(g: Graph, keep) -> Graph:
    """Subgraph on ``keep``; new ids follow the ascending order of the old ones.

    Labels carry over from ``g`` (or become the old integer ids when ``g`` has
    none), so the subgraph can always be mapped back.
    """
    keep = np.unique(np.asarray(list(keep) if not isinstance(keep, np.ndarray) else keep, dtype=np.int64))
    if len(keep) and (keep[0] < 0 or keep[-1] >= g.num_nodes):
        raise IndexError("keep contains ids outside the graph")
    remap = np.full(g.num_nodes, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    e = g.edges()
    if len(e):
        e = remap[e]
        e = e[(e >= 0).all(axis=1)]
    old_labels = g.node_labels()
    labels = [old_labels[u] for u in keep]
    sub = from_edge_array(len(keep), e, labels)
    sub.stats.clear()
    return sub


def components(g: Graph) -> np.ndarray:
    """Component label per node, labels numbered by smallest member id."""
    _, raw = connected_components(g.to_scipy(), directed=False)
    # relabel so that component ids follow first appearance by node id
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    return relabel[raw]


def largest_component_nodes(g: Graph) -> np.ndarray:
    """Node ids of the largest component; ties go to the one holding the smallest id."""
    if g.num_nodes == 0:
        raise EmptyGraphError("graph has no nodes")
    comp = components(g)
    sizes = np.bincount(comp)
    # argmax returns the first maximum, i.e. the component with the smallest min id
    best = int(np.argmax(sizes))
    return np.flatnonzero(comp == best)


def largest_connected_component(g: Graph) -> Graph:
    return induced_subgraph(g, largest_component_nodes(g))


def is_connected(g: Graph) -> bool:
    return g.num_nodes > 0 and int(components(g).max()) == 0


def graph_stats(g: Graph, lcc: Graph | None = None) -> dict:
    """Summary used for the JSON stats dump."""
    if lcc is None:
        lcc = largest_connected_component(g)
    return {
        "nodes": g.num_nodes,
        "edges": g.num_edges,
        "self_loops_removed": g.stats.get("self_loops_removed", 0),
        "duplicates_removed": g.stats.get("duplicates_removed", 0),
        "components": int(components(g).max()) + 1 if g.num_nodes else 0,
        "lcc_nodes": lcc.num_nodes,
        "lcc_edges": lcc.num_edges,
    }


def dump_stats(stats: dict) -> str:
    return json.dumps(stats, indent=2, sort_keys=False)
