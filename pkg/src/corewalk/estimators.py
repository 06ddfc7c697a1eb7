"""scikit-learn style embedders.

``fit`` takes a :class:`~corewalk.graph.Graph`; the learned vectors end up in
``embedding_`` (an :class:`~corewalk.embedding.EmbeddingMatrix`) and phase
timings in ``timing_``. ``transform`` maps node ids to their vectors.
"""

from __future__ import annotations

import time

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.utils.validation import check_is_fitted

from ._validation import check_graph, check_node_ids
from .embedding import TrainConfig, train
from .graph import Graph
from .kcore import decompose
from .propagation import PropagationConfig, TimingBreakdown, propagate_full
from .walks import WalkConfig, generate_corpus


class _NodeEmbedder(TransformerMixin, BaseEstimator):

    def transform(self, X):
        check_is_fitted(self, "embedding_")
        if isinstance(X, Graph):
            if X.num_nodes != self.embedding_.num_nodes:
                raise ValueError("graph does not match the one passed to fit")
            return self.embedding_.vectors
        return self.embedding_.vectors[check_node_ids(X, self.embedding_.num_nodes)]

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, **fit_params).embedding_.vectors


class DeepWalk(_NodeEmbedder):
    """Fixed number of uniform walks per node, then SkipGram.

    Defaults reproduce the usual DeepWalk setup: 15 walks of length 30 per
    node, window 4, 150 dimensions.
    """

    _core_adaptive = False

    def __init__(self, walks_per_node=15, walk_length=30, dim=150, window=4, negatives=5,
                 epochs=5, lr_initial=0.025, lr_final=0.0001, shrink_window=False,
                 workers=1, random_state=0):
        self.walks_per_node = walks_per_node
        self.walk_length = walk_length
        self.dim = dim
        self.window = window
        self.negatives = negatives
        self.epochs = epochs
        self.lr_initial = lr_initial
        self.lr_final = lr_final
        self.shrink_window = shrink_window
        self.workers = workers
        self.random_state = random_state

    def _configs(self):
        seed = int(self.random_state or 0)
        walk_cfg = WalkConfig(self.walks_per_node, self.walk_length, seed)
        train_cfg = TrainConfig(self.dim, self.window, self.negatives, self.epochs, self.lr_initial,
                                self.lr_final, seed, self.shrink_window, self.workers)
        return walk_cfg, train_cfg

    def fit(self, X, y=None, core=None):
        """``core`` may pass a precomputed decomposition of ``X`` (CoreWalk only)."""
        g = check_graph(X)
        walk_cfg, train_cfg = self._configs()
        timing = TimingBreakdown()
        t0 = time.perf_counter()
        if self._core_adaptive:
            if core is None:
                core = decompose(g)
                timing.core_decomposition_s = time.perf_counter() - t0
            self.core_ = core
        else:
            core = None
        t = time.perf_counter()
        corpus = generate_corpus(g, walk_cfg, core, threads=self.workers)
        emb = train(corpus, g.num_nodes, train_cfg)
        emb.labels = tuple(g.node_labels())
        timing.embedding_s = time.perf_counter() - t
        timing.total_s = time.perf_counter() - t0
        self.corpus_size_ = len(corpus)
        self.corpus_tokens_ = corpus.num_tokens
        self.embedding_ = emb
        self.timing_ = timing
        return self


class CoreWalk(DeepWalk):
    """DeepWalk with the per-node walk count scaled by core index.

    Node ``v`` roots ``max(floor(walks_per_node * k_v / k_max), 1)`` walks,
    so only the densest core keeps the full budget.
    """

    _core_adaptive = True


class KCorePropagation(_NodeEmbedder):
    """Embed the ``k0``-core with ``base`` and propagate vectors outward.

    Parameters
    ----------
    base : estimator, default DeepWalk()
        Any embedder with this module's ``fit``/``embedding_`` protocol. It is
        cloned and fitted on the k0-core subgraph.
    k0 : int
        Core index of the initially embedded subgraph. ``k0=1`` embeds the
        whole graph and skips propagation.
    max_iterations, tolerance :
        Jacobi sweep cap and max-norm stopping threshold, per shell.
    allow_isolated : bool
        Give zero vectors to nodes unreachable from the core instead of raising.
    """

    def __init__(self, base=None, k0=1, max_iterations=100, tolerance=1e-6, allow_isolated=False):
        self.base = base
        self.k0 = k0
        self.max_iterations = max_iterations
        self.tolerance = tolerance
        self.allow_isolated = allow_isolated

    def fit(self, X, y=None, core=None):
        g = check_graph(X)
        cfg = PropagationConfig(self.k0, self.max_iterations, self.tolerance, self.allow_isolated)
        t0 = time.perf_counter()
        if core is None:
            core = decompose(g)
        decomposition_s = time.perf_counter() - t0
        base = self.base if self.base is not None else DeepWalk()
        fitted = []

        def embed(core_graph):
            est = clone(base).fit(core_graph)
            fitted.append(est)
            return est.embedding_

        emb, timing = propagate_full(g, core, embed, cfg)
        timing.core_decomposition_s = decomposition_s
        timing.total_s = time.perf_counter() - t0
        self.core_ = core
        self.base_ = fitted[0]
        self.embedding_ = emb
        self.timing_ = timing
        self.corpus_size_ = getattr(self.base_, "corpus_size_", None)
        return self

