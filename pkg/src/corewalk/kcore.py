"""Core decomposition by bucket-queue peeling."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numba
import numpy as np

from .exceptions import DecompositionError, EmptyCoreError
from .graph import Graph, induced_subgraph


@dataclass(frozen=True, eq=False)
class CoreDecomposition:
    core_index: np.ndarray
    degeneracy: int

    @property
    def shell_members(self) -> dict[int, np.ndarray]:
        return {k: np.flatnonzero(self.core_index == k) for k in range(1, self.degeneracy + 1)}

    def core_nodes(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.core_index >= k)

    def shell(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.core_index == k)


@numba.njit(cache=True)
def _peel(indptr, indices):
    # Batagelj & Zaversnik: nodes kept sorted by current degree in `order`,
    # `bin_start[d]` marks where degree-d nodes begin.
    n = len(indptr) - 1
    deg = np.empty(n, dtype=np.int64)
    max_deg = 0
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] > max_deg:
            max_deg = deg[v]
    bin_start = np.zeros(max_deg + 1, dtype=np.int64)
    for v in range(n):
        bin_start[deg[v]] += 1
    start = 0
    for d in range(max_deg + 1):
        count = bin_start[d]
        bin_start[d] = start
        start += count
    pos = np.empty(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    for v in range(n):
        pos[v] = bin_start[deg[v]]
        order[pos[v]] = v
        bin_start[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bin_start[d] = bin_start[d - 1]
    bin_start[0] = 0
    for i in range(n):
        v = order[i]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bin_start[du]
                w = order[pw]
                if u != w:
                    pos[u] = pw
                    order[pu] = w
                    pos[w] = pu
                    order[pw] = u
                bin_start[du] += 1
                deg[u] -= 1
    return deg


def decompose(g: Graph) -> CoreDecomposition:
    """Core index of every node in O(|V| + |E|)."""
    if g.num_edges == 0:
        raise DecompositionError("core decomposition needs a graph with at least one edge")
    if (g.degrees == 0).any():
        isolated = np.flatnonzero(g.degrees == 0)
        raise DecompositionError(
            f"graph has {len(isolated)} isolated node(s) (first: {isolated[0]}); "
            "reduce it to its largest connected component first"
        )
    core = _peel(g.indptr, g.indices)
    return CoreDecomposition(core, int(core.max()))


def k_core_subgraph(g: Graph, d: CoreDecomposition, k: int) -> Graph:
    """Induced subgraph on nodes with core index >= k. May be disconnected."""
    if k < 1:
        raise EmptyCoreError(f"k must be >= 1, got {k}")
    if k > d.degeneracy:
        raise EmptyCoreError(f"{k}-core is empty (degeneracy is {d.degeneracy})")
    return induced_subgraph(g, d.core_nodes(k))


def shell_sequence(d: CoreDecomposition) -> list[tuple[int, int]]:
    counts = np.bincount(d.core_index, minlength=d.degeneracy + 1)
    return [(k, int(counts[k])) for k in range(1, d.degeneracy + 1)]


def shell_histogram_csv(d: CoreDecomposition) -> str:
    buf = io.StringIO()
    buf.write("k,count\n")
    for k, c in shell_sequence(d):
        buf.write(f"{k},{c}\n")
    return buf.getvalue()
