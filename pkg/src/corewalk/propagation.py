"""Mean-embedding propagation from a k0-core out to the whole graph.

Nodes of each shell get the average vector of their neighbours that are
already embedded or belong to the same shell. The coupled averaging system
is solved with Jacobi sweeps.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .embedding import EmbeddingMatrix
from .exceptions import ConfigError, IsolatedShellError
from .graph import Graph
from .kcore import CoreDecomposition, decompose, k_core_subgraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PropagationConfig:
    k0: int = 1
    max_iterations: int = 100
    tolerance: float = 1e-6
    allow_isolated: bool = False

    def __post_init__(self):
        if self.k0 < 1:
            raise ConfigError("k0 must be >= 1")
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be > 0")


@dataclass
class TimingBreakdown:
    core_decomposition_s: float = 0.0
    embedding_s: float = 0.0
    propagation_s: float = 0.0
    total_s: float = 0.0

    @property
    def overhead_s(self) -> float:
        return self.total_s - self.core_decomposition_s - self.embedding_s - self.propagation_s

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


@dataclass
class ShellSolve:
    """Diagnostics of one propagation step."""

    nodes: np.ndarray
    iterations: int
    change: float
    unanchored: np.ndarray


def _as_index(nodes, n) -> np.ndarray:
    arr = np.unique(np.fromiter(nodes, dtype=np.int64) if not isinstance(nodes, np.ndarray) else nodes.astype(np.int64))
    if len(arr) and (arr[0] < 0 or arr[-1] >= n):
        raise IndexError("node id out of range")
    return arr


def _solve_shell(adj: sp.csr_matrix, x: np.ndarray, embedded: np.ndarray, new: np.ndarray,
                 cfg: PropagationConfig) -> ShellSolve:
    """Fill ``x[new]`` in place. Nodes of ``new`` without a path to ``embedded``
    are left untouched and reported in ``unanchored``."""
    rows = adj[new]
    a_nn = rows[:, new].tocsr()
    a_ne = rows[:, embedded].tocsr()
    deg_e = np.asarray(a_ne.sum(axis=1)).ravel()

    # a connected piece of new nodes is solvable iff it touches the embedded set
    _, piece = connected_components(a_nn, directed=False)
    anchored_piece = np.zeros(piece.max() + 1 if len(piece) else 0, dtype=bool)
    anchored_piece[piece[deg_e > 0]] = True
    anchored = anchored_piece[piece]
    unanchored = new[~anchored]
    if not anchored.all():
        keep = np.flatnonzero(anchored)
        a_nn = a_nn[keep][:, keep].tocsr()
        a_ne = a_ne[keep]
        deg_e = deg_e[keep]
        new = new[keep]
        piece = piece[keep]
    if len(new) == 0:
        return ShellSolve(new, 0, 0.0, unanchored)

    deg = np.asarray(a_nn.sum(axis=1)).ravel() + deg_e
    boundary = a_ne @ x[embedded]

    # Start from the mean of embedded neighbours, then grow inward: a node
    # with none takes the mean of already initialized neighbours. Every start
    # value is thus a convex combination of boundary vectors.
    cur = np.zeros((len(new), x.shape[1]))
    ready = deg_e > 0
    cur[ready] = boundary[ready] / deg_e[ready, None]
    while not ready.all():
        cnt = a_nn @ ready.astype(np.float64)
        grow = (~ready) & (cnt > 0)
        cur[grow] = (a_nn[grow] @ (cur * ready[:, None])) / cnt[grow, None]
        ready |= grow

    change = np.inf
    it = 0
    deg = deg[:, None]
    while it < cfg.max_iterations:
        nxt = (a_nn @ cur + boundary) / deg
        change = float(np.abs(nxt - cur).max())
        cur = nxt
        it += 1
        if change < cfg.tolerance:
            break
    # The exact solution lies in the per-piece box of its boundary values;
    # clamping only removes floating point rounding past that box.
    coo = a_ne.tocoo()
    vals = x[embedded[coo.col]]
    lo = np.full((piece.max() + 1, x.shape[1]), np.inf)
    hi = np.full_like(lo, -np.inf)
    np.minimum.at(lo, piece[coo.row], vals)
    np.maximum.at(hi, piece[coo.row], vals)
    x[new] = np.clip(cur, lo[piece], hi[piece])
    return ShellSolve(new, it, change, unanchored)


def propagate_step(g: Graph, embedded, new_nodes, emb: EmbeddingMatrix,
                   cfg: PropagationConfig = PropagationConfig()) -> EmbeddingMatrix:
    """Assign each node of ``new_nodes`` the mean of its embedded or new neighbours.

    ``emb`` has one row per node of ``g``; rows of ``embedded`` are held fixed.
    Raises :class:`IsolatedShellError` for new nodes with no path to the
    embedded set unless ``cfg.allow_isolated``, in which case they get zeros.
    """
    n = g.num_nodes
    embedded = _as_index(embedded, n)
    new = _as_index(new_nodes, n)
    if np.intersect1d(embedded, new).size:
        raise ValueError("embedded and new_nodes overlap")
    out = emb.copy()
    x = out.vectors.astype(np.float64)
    solve = _solve_shell(g.to_scipy(), x, embedded, new, cfg)
    _handle_unanchored(solve.unanchored, x, cfg)
    out.vectors = x.astype(emb.vectors.dtype, copy=False)
    out.trained_mask[new] = False
    return out


def _handle_unanchored(nodes, x, cfg):
    if len(nodes) == 0:
        return
    if not cfg.allow_isolated:
        raise IsolatedShellError(nodes)
    logger.warning("%d node(s) unreachable from the embedded core; assigning zero vectors", len(nodes))
    x[nodes] = 0.0


def propagate_full(g: Graph, d: CoreDecomposition | None, base: Callable[[Graph], EmbeddingMatrix],
                   cfg: PropagationConfig) -> tuple[EmbeddingMatrix, TimingBreakdown]:
    """Embed the k0-core with ``base`` and propagate shell by shell down to the 1-shell.

    A shell piece that is not yet connected to embedded nodes (possible when a
    core is disconnected) is carried over to the next shell down, where the
    extra nodes may link it up. Whatever is still unreachable after the last
    shell triggers :class:`IsolatedShellError` unless ``cfg.allow_isolated``.
    """
    timing = TimingBreakdown()
    t_start = time.perf_counter()
    if d is None:
        d = decompose(g)
        timing.core_decomposition_s = time.perf_counter() - t_start
    if cfg.k0 > d.degeneracy:
        raise ConfigError(f"k0={cfg.k0} exceeds the degeneracy {d.degeneracy}")

    t = time.perf_counter()
    core_nodes = d.core_nodes(cfg.k0)
    core_graph = k_core_subgraph(g, d, cfg.k0)
    core_emb = base(core_graph)
    timing.embedding_s = time.perf_counter() - t

    t = time.perf_counter()
    x = np.zeros((g.num_nodes, core_emb.dim))
    x[core_nodes] = core_emb.vectors
    trained = np.zeros(g.num_nodes, dtype=bool)
    trained[core_nodes] = core_emb.trained_mask
    placed = np.zeros(g.num_nodes, dtype=bool)
    placed[core_nodes] = True
    adj = g.to_scipy() if cfg.k0 > 1 else None
    pending = np.empty(0, dtype=np.int64)
    for k in range(cfg.k0 - 1, 0, -1):
        new = np.union1d(d.shell(k), pending)
        if len(new) == 0:
            continue
        solve = _solve_shell(adj, x, np.flatnonzero(placed), new, cfg)
        placed[solve.nodes] = True
        pending = solve.unanchored
        logger.debug("shell %d: %d nodes, %d iterations, last change %.2e, %d deferred",
                     k, len(solve.nodes), solve.iterations, solve.change, len(pending))
    _handle_unanchored(pending, x, cfg)
    timing.propagation_s = time.perf_counter() - t
    timing.total_s = time.perf_counter() - t_start
    emb = EmbeddingMatrix(x.astype(core_emb.vectors.dtype, copy=False), trained, tuple(g.node_labels()))
    return emb, timing
