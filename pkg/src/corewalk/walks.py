"""Uniform random-walk corpora with fixed or core-adaptive walk counts."""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .exceptions import ConfigError
from .graph import Graph
from .kcore import CoreDecomposition

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class WalkConfig:
    walks_per_node: int = 15
    walk_length: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.walks_per_node < 1:
            raise ConfigError("walks_per_node must be >= 1")
        if self.walk_length < 2:
            raise ConfigError("walk_length must be >= 2")


@dataclass(frozen=True, eq=False)
class WalkCorpus:
    """Walks stored row-wise in an ``(num_walks, walk_length)`` int32 array."""

    walks: np.ndarray
    root_of: np.ndarray

    def __len__(self):
        return len(self.walks)

    @property
    def num_tokens(self) -> int:
        return int(self.walks.size)

    def to_text(self) -> str:
        return "".join(" ".join(map(str, w)) + "\n" for w in self.walks.tolist())


def walk_budget(core_index: int, degeneracy: int, n: int) -> int:
    """Walks rooted at a node: ``max(floor(n * k_v / k_degeneracy), 1)``."""
    if not 1 <= core_index <= degeneracy:
        raise ConfigError(f"core index {core_index} outside 1..{degeneracy}")
    if n < 1:
        raise ConfigError("n must be >= 1")
    return max((n * core_index) // degeneracy, 1)


def walk_budgets(d: CoreDecomposition, n: int) -> np.ndarray:
    return np.maximum((n * d.core_index.astype(np.int64)) // d.degeneracy, 1)


@numba.njit(cache=True)
def _splitmix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


@numba.njit(cache=True)
def _stream_state(seed, root, k):
    s = _splitmix(np.uint64(seed) + _GOLDEN)
    s = _splitmix(s ^ (np.uint64(root) * _GOLDEN))
    return _splitmix(s ^ (np.uint64(k) + _M2))


@numba.njit(cache=True)
def _fill_walks(indptr, indices, roots, walk_idx, length, seed, out):
    # Each walk draws from its own counter-based stream keyed on
    # (seed, root, walk index), so the result does not depend on scheduling.
    for w in range(len(roots)):
        v = roots[w]
        state = _stream_state(seed, v, walk_idx[w])
        out[w, 0] = v
        for t in range(1, length):
            lo = indptr[v]
            deg = indptr[v + 1] - lo
            state += _GOLDEN
            r = _splitmix(state)
            v = indices[lo + np.int64(r % np.uint64(deg))]
            out[w, t] = v


@numba.njit(cache=True, parallel=True)
def _fill_walks_parallel(indptr, indices, roots, walk_idx, length, seed, out):
    for w in numba.prange(len(roots)):
        v = roots[w]
        state = _stream_state(seed, v, walk_idx[w])
        out[w, 0] = v
        for t in range(1, length):
            lo = indptr[v]
            deg = indptr[v + 1] - lo
            state += _GOLDEN
            r = _splitmix(state)
            v = indices[lo + np.int64(r % np.uint64(deg))]
            out[w, t] = v


def random_walk(g: Graph, root: int, length: int, rng: np.random.Generator) -> list[int]:
    """One uniform walk of ``length`` nodes starting at ``root``."""
    if g.degree(root) == 0:
        raise ValueError(f"cannot walk from isolated node {root}")
    walk = [root]
    v = root
    for _ in range(length - 1):
        nbrs = g.neighbors(v)
        v = int(nbrs[rng.integers(len(nbrs))])
        walk.append(v)
    return walk


def generate_corpus(
    g: Graph,
    cfg: WalkConfig,
    core: CoreDecomposition | None = None,
    shuffle: bool = True,
    threads: int = 1,
) -> WalkCorpus:
    """Materialize a walk corpus.

    With ``core=None`` every node roots ``cfg.walks_per_node`` walks (the
    DeepWalk schedule); with a decomposition the count per node follows
    :func:`walk_budget`. The corpus is identical for any ``threads``.
    """
    n = g.num_nodes
    if n == 0:
        raise ConfigError("cannot generate walks on an empty graph")
    if (g.degrees == 0).any():
        raise ConfigError("graph has isolated nodes; walks need every root to have a neighbour")
    if core is None:
        counts = np.full(n, cfg.walks_per_node, dtype=np.int64)
    else:
        if len(core.core_index) != n:
            raise ConfigError("core decomposition does not match the graph")
        counts = walk_budgets(core, cfg.walks_per_node)
    roots = np.repeat(np.arange(n, dtype=np.int64), counts)
    starts = np.cumsum(counts) - counts
    walk_idx = np.arange(len(roots), dtype=np.int64) - np.repeat(starts, counts)
    out = np.empty((len(roots), cfg.walk_length), dtype=np.int32)
    seed = np.uint64(cfg.seed % (1 << 64))
    if threads > 1:
        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
        _fill_walks_parallel(g.indptr, g.indices, roots, walk_idx, cfg.walk_length, seed, out)
    else:
        _fill_walks(g.indptr, g.indices, roots, walk_idx, cfg.walk_length, seed, out)
    roots = roots.astype(np.int32)
    if shuffle:
        perm = np.random.default_rng([cfg.seed % (1 << 63), 1]).permutation(len(roots))
        out, roots = out[perm], roots[perm]
    return WalkCorpus(out, roots)
