"""SkipGram with negative sampling over node walks.

The trainer follows word2vec's update rule: for each (center, context) pair
the center's input vector ``h`` is scored against the context's output
vector (label 1) and against ``negatives`` noise nodes (label 0) drawn from
the unigram distribution raised to 3/4.
"""

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass

import numba
import numpy as np

from .exceptions import ConfigError, TrainingError
from .walks import WalkCorpus, _GOLDEN, _splitmix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    dim: int = 150
    window: int = 4
    negatives: int = 5
    epochs: int = 5
    lr_initial: float = 0.025
    lr_final: float = 0.0001
    seed: int = 0
    shrink_window: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError("dim must be >= 1")
        if self.window < 1:
            raise ConfigError("window must be >= 1")
        if self.negatives < 1:
            raise ConfigError("negatives must be >= 1")
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")
        if not self.lr_initial > self.lr_final > 0:
            raise ConfigError("need lr_initial > lr_final > 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


@dataclass(eq=False)
class EmbeddingMatrix:
    """Row ``v`` of ``vectors`` is the embedding of node ``v``."""

    vectors: np.ndarray
    trained_mask: np.ndarray
    labels: tuple[str, ...] | None = None
    epoch_loss: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def num_nodes(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.num_nodes

    def copy(self) -> "EmbeddingMatrix":
        return EmbeddingMatrix(self.vectors.copy(), self.trained_mask.copy(), self.labels, self.epoch_loss)


def training_pairs(walk, window: int) -> list[tuple[int, int]]:
    """(center, context) pairs at distance <= window; identical ids are skipped."""
    if window < 1:
        raise ConfigError("window must be >= 1")
    walk = list(walk)
    pairs = []
    for i, c in enumerate(walk):
        for j in range(max(0, i - window), min(len(walk), i + window + 1)):
            if j != i and walk[j] != c:
                pairs.append((c, walk[j]))
    return pairs


@numba.njit(cache=True)
def _count_pairs(walks, window):
    total = 0
    n_walks, length = walks.shape
    for w in range(n_walks):
        for i in range(length):
            c = walks[w, i]
            lo = max(0, i - window)
            hi = min(length, i + window + 1)
            for j in range(lo, hi):
                if j != i and walks[w, j] != c:
                    total += 1
    return total


@numba.njit(cache=True)
def _log_sigmoid(x):
    if x >= 0:
        return -math.log1p(math.exp(-x))
    return x - math.log1p(math.exp(x))


@numba.njit(cache=True)
def _sigmoid(x):
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


@numba.njit(cache=True, fastmath=True, inline="always")
def _sgns_step(w_in, w_out, center, targets, n_targets, lr, neu1e):
    """One SGD step for ``center``; ``targets[0]`` is the positive context.

    Returns the pair objective evaluated before the update.
    """
    dim = w_in.shape[1]
    for d in range(dim):
        neu1e[d] = 0.0
    loss = 0.0
    for k in range(n_targets):
        t = targets[k]
        f = w_in.dtype.type(0.0)
        for d in range(dim):
            f += w_in[center, d] * w_out[t, d]
        # one exp/log1p pair gives both s(f) and the log-loss term
        e = math.exp(-abs(f))
        sig = 1.0 / (1.0 + e) if f >= 0 else e / (1.0 + e)
        if k == 0:
            g = w_in.dtype.type((1.0 - sig) * lr)
            loss += math.log1p(e) - min(f, 0.0)
        else:
            g = w_in.dtype.type(-sig * lr)
            loss += math.log1p(e) + max(f, 0.0)
        for d in range(dim):
            neu1e[d] += g * w_out[t, d]
        for d in range(dim):
            w_out[t, d] += g * w_in[center, d]
    for d in range(dim):
        w_in[center, d] += neu1e[d]
    return loss


@numba.njit(cache=True)
def _draw_noise(state, prob, alias):
    r = _splitmix(state)
    # multiply-shift range reduction; avoids a 64-bit division
    i = np.int64(((r >> np.uint64(32)) * np.uint64(len(prob))) >> np.uint64(32))
    u = np.float64(_splitmix(r) >> np.uint64(11)) * (1.0 / 9007199254740992.0)
    return i if u < prob[i] else alias[i]


@numba.njit(cache=True, fastmath=True)
def _train_range(walks, rows, w_in, w_out, prob, alias, window, negatives, lr0, lr1,
                 done, total, seed, shrink, neu1e, targets):
    # Returns (summed loss, pairs seen). `done`/`total` drive the linear
    # learning-rate decay over the whole run.
    length = walks.shape[1]
    state = seed
    loss = 0.0
    seen = 0
    for r in range(len(rows)):
        w = rows[r]
        for i in range(length):
            c = walks[w, i]
            win = window
            if shrink:
                state += _GOLDEN
                win = window - np.int64(_splitmix(state) % np.uint64(window))
            lo = max(0, i - win)
            hi = min(length, i + win + 1)
            for j in range(lo, hi):
                o = walks[w, j]
                if j == i or o == c:
                    continue
                frac = (done + seen) / total
                if frac > 1.0:
                    frac = 1.0
                lr = lr0 - (lr0 - lr1) * frac
                targets[0] = o
                n_t = 1
                for _ in range(negatives):
                    state += _GOLDEN
                    t = _draw_noise(state, prob, alias)
                    if t != o:
                        targets[n_t] = t
                        n_t += 1
                loss += _sgns_step(w_in, w_out, c, targets, n_t, lr, neu1e)
                seen += 1
    return loss, seen


@numba.njit(cache=True, parallel=True)
def _train_epoch_hogwild(walks, chunks, w_in, w_out, prob, alias, window, negatives, lr0, lr1,
                         done, total, seed, shrink, losses, counts):
    dim = w_in.shape[1]
    n_chunks = len(chunks) - 1
    # unsynchronized updates: chunks race on shared rows, as in word2vec's threads
    for ci in numba.prange(n_chunks):
        rows = np.arange(chunks[ci], chunks[ci + 1])
        neu1e = np.zeros(dim, dtype=np.float32)
        targets = np.empty(negatives + 1, dtype=np.int64)
        chunk_done = done + (total / max(1, len(walks))) * chunks[ci]
        l, s = _train_range(walks, rows, w_in, w_out, prob, alias, window, negatives, lr0, lr1,
                            chunk_done, total, _splitmix(seed + np.uint64(ci)), shrink, neu1e, targets)
        losses[ci] = l
        counts[ci] = s


def noise_distribution(walks: np.ndarray, num_nodes: int, power: float = 0.75) -> np.ndarray:
    """Normalized unigram^power distribution over node frequencies in the corpus."""
    freq = np.bincount(walks.ravel(), minlength=num_nodes).astype(np.float64)
    p = freq ** power
    return p / p.sum()


def alias_table(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vose alias tables for O(1) sampling from ``p``."""
    n = len(p)
    scaled = np.asarray(p, dtype=np.float64) * n
    prob = np.ones(n)
    alias = np.arange(n, dtype=np.int32)
    small = [i for i in range(n) if scaled[i] < 1.0]
    large = [i for i in range(n) if scaled[i] >= 1.0]
    while small and large:
        s, l = small.pop(), large.pop()
        prob[s] = scaled[s]
        alias[s] = l
        scaled[l] -= 1.0 - scaled[s]
        (small if scaled[l] < 1.0 else large).append(l)
    return prob, alias


def train(corpus: WalkCorpus, num_nodes: int, cfg: TrainConfig = TrainConfig()) -> EmbeddingMatrix:
    """Fit SkipGram vectors for ``num_nodes`` nodes from a walk corpus.

    Single-worker training is deterministic for a given ``cfg.seed``. Nodes
    that never appear in the corpus get a zero row and ``trained_mask`` False.
    """
    walks = np.ascontiguousarray(corpus.walks, dtype=np.int32)
    if walks.size == 0:
        raise TrainingError("walk corpus is empty")
    if walks.min() < 0 or walks.max() >= num_nodes:
        raise IndexError("walk contains a node id outside 0..num_nodes-1")

    rng = np.random.default_rng([cfg.seed % (1 << 63), 2])
    w_in = ((rng.random((num_nodes, cfg.dim)) - 0.5) / cfg.dim).astype(np.float32)
    w_out = np.zeros((num_nodes, cfg.dim), dtype=np.float32)
    prob, alias = alias_table(noise_distribution(walks, num_nodes))

    # with shrink_window this over-counts, so the schedule stops short of lr_final
    per_epoch = _count_pairs(walks, cfg.window)
    if per_epoch == 0:
        raise TrainingError("corpus yields no (center, context) pairs")
    total = float(per_epoch * cfg.epochs)

    mask = (1 << 64) - 1
    seed = int(_splitmix(np.uint64((cfg.seed + 3) & mask)))
    losses = np.empty(cfg.epochs)
    done = 0.0
    rows = np.arange(len(walks), dtype=np.int64)
    neu1e = np.zeros(cfg.dim, dtype=np.float32)
    targets = np.empty(cfg.negatives + 1, dtype=np.int64)
    for epoch in range(cfg.epochs):
        epoch_seed = np.uint64(_splitmix(np.uint64((seed + epoch * int(_GOLDEN)) & mask)))
        if cfg.workers == 1:
            loss, seen = _train_range(walks, rows, w_in, w_out, prob, alias, cfg.window, cfg.negatives,
                                      cfg.lr_initial, cfg.lr_final, done, total, epoch_seed,
                                      cfg.shrink_window, neu1e, targets)
        else:
            numba.set_num_threads(min(cfg.workers, numba.config.NUMBA_NUM_THREADS))
            n_chunks = cfg.workers * 4
            chunks = np.linspace(0, len(walks), n_chunks + 1).astype(np.int64)
            chunk_loss = np.zeros(n_chunks)
            chunk_seen = np.zeros(n_chunks, dtype=np.int64)
            _train_epoch_hogwild(walks, chunks, w_in, w_out, prob, alias, cfg.window, cfg.negatives,
                                 cfg.lr_initial, cfg.lr_final, done, total, epoch_seed,
                                 cfg.shrink_window, chunk_loss, chunk_seen)
            loss, seen = chunk_loss.sum(), int(chunk_seen.sum())
        done += seen
        losses[epoch] = loss / max(seen, 1)
        logger.debug("epoch %d: %d pairs, mean objective %.4f", epoch + 1, seen, losses[epoch])

    trained = np.bincount(walks.ravel(), minlength=num_nodes) > 0
    w_in[~trained] = 0.0
    if not np.isfinite(w_in).all():
        raise TrainingError("training diverged (non-finite vectors); lower lr_initial")
    return EmbeddingMatrix(w_in, trained, epoch_loss=losses)


def pair_objective(h, u_pos, u_negs) -> float:
    """Negative-sampling loss of one pair: -log s(h.u+) - sum log s(-h.u-)."""
    loss = -_log_sigmoid(float(h @ u_pos))
    for u in np.atleast_2d(u_negs):
        loss -= _log_sigmoid(-float(h @ u))
    return loss


def pair_gradients(h, u_pos, u_negs):
    """Analytic gradients of :func:`pair_objective` w.r.t. h, u_pos and each u_neg."""
    u_negs = np.atleast_2d(u_negs)
    s_pos = _sigmoid(float(h @ u_pos))
    s_neg = np.array([_sigmoid(float(h @ u)) for u in u_negs])
    g_h = -(1.0 - s_pos) * u_pos + (s_neg[:, None] * u_negs).sum(axis=0)
    g_pos = -(1.0 - s_pos) * h
    g_negs = s_neg[:, None] * h[None, :]
    return g_h, g_pos, g_negs


def save_embedding(emb: EmbeddingMatrix, fh) -> None:
    """Text format: ``num_nodes dim`` header then ``label v1 ... vn`` per row."""
    labels = emb.labels if emb.labels is not None else [str(i) for i in range(emb.num_nodes)]
    fh.write(f"{emb.num_nodes} {emb.dim}\n")
    for label, row in zip(labels, emb.vectors):
        fh.write(label + " " + " ".join(repr(float(x)) for x in row) + "\n")


def load_embedding(fh) -> EmbeddingMatrix:
    if isinstance(fh, (str, bytes)):
        fh = io.StringIO(fh.decode() if isinstance(fh, bytes) else fh)
    header = fh.readline().split()
    if len(header) != 2:
        raise ValueError("embedding file must start with 'num_nodes dim'")
    n, dim = int(header[0]), int(header[1])
    labels = []
    vectors = np.empty((n, dim))
    for i in range(n):
        parts = fh.readline().split()
        if len(parts) != dim + 1:
            raise ValueError(f"row {i + 1}: expected {dim + 1} fields, got {len(parts)}")
        labels.append(parts[0])
        vectors[i] = [float(x) for x in parts[1:]]
    return EmbeddingMatrix(vectors, np.ones(n, dtype=bool), tuple(labels))
