"""Edge-removal splits for link prediction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import SplitError
from ..graph import Graph, from_edge_array, induced_subgraph, largest_component_nodes

TRAIN, VALIDATION, TEST = 0, 1, 2
SPLIT_FRACTIONS = (0.7, 0.1, 0.2)


@dataclass(eq=False)
class LinkPredictionSplit:
    """Held-out edges plus sampled non-edges, in ``train_graph`` node ids.

    ``train_nodes[i]`` is the id in the original graph of train node ``i``.
    ``pairs``/``labels``/``assignment`` pool positives and negatives; the
    assignment column holds TRAIN, VALIDATION or TEST.
    """

    train_graph: Graph
    train_nodes: np.ndarray
    positives: np.ndarray
    negatives: np.ndarray
    pairs: np.ndarray
    labels: np.ndarray
    assignment: np.ndarray
    removal_fraction: float

    def subset(self, which: int) -> tuple[np.ndarray, np.ndarray]:
        mask = self.assignment == which
        return self.pairs[mask], self.labels[mask]


def _sample_non_edges(g: Graph, nodes: np.ndarray, count: int, rng) -> np.ndarray:
    """``count`` distinct unordered pairs of ``nodes`` that are not edges of ``g``."""
    n = g.num_nodes
    m = len(nodes)
    member = np.zeros(n, dtype=bool)
    member[nodes] = True
    e = g.edges()
    inside = int(np.sum(member[e[:, 0]] & member[e[:, 1]])) if len(e) else 0
    available = m * (m - 1) // 2 - inside
    if count > available:
        raise SplitError(f"need {count} negative pairs but only {available} non-edges exist")
    edge_keys = np.sort(e[:, 0] * n + e[:, 1])
    chosen = np.empty(0, dtype=np.int64)
    while len(chosen) < count:
        batch = max(2 * (count - len(chosen)), 64)
        a = nodes[rng.integers(m, size=batch)]
        b = nodes[rng.integers(m, size=batch)]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        keys = lo * n + hi
        pos = np.searchsorted(edge_keys, keys)
        pos[pos == len(edge_keys)] = 0
        is_edge = edge_keys[pos] == keys if len(edge_keys) else np.zeros(batch, dtype=bool)
        keys = keys[(lo != hi) & ~is_edge]
        merged = np.concatenate([chosen, keys])
        _, first = np.unique(merged, return_index=True)
        chosen = merged[np.sort(first)]
    chosen = chosen[:count]
    return np.column_stack([chosen // n, chosen % n])


def _stratified_assignment(labels: np.ndarray, rng) -> np.ndarray:
    assignment = np.empty(len(labels), dtype=np.int8)
    for cls in (True, False):
        idx = np.flatnonzero(labels == cls)
        idx = idx[rng.permutation(len(idx))]
        n_test = int(round(SPLIT_FRACTIONS[2] * len(idx)))
        n_val = int(round(SPLIT_FRACTIONS[1] * len(idx)))
        assignment[idx[:n_test]] = TEST
        assignment[idx[n_test:n_test + n_val]] = VALIDATION
        assignment[idx[n_test + n_val:]] = TRAIN
    return assignment


def make_split(g: Graph, fraction: float, seed: int = 0) -> LinkPredictionSplit:
    """Remove ``floor(fraction * |E|)`` random edges and build labelled pairs.

    The remaining graph is cut down to its largest component; removed edges
    with an endpoint outside it are dropped. Negatives are sampled uniformly
    among surviving node pairs that are not edges of ``g`` itself, so a
    held-out edge can never be drawn as a negative.
    """
    if not 0 < fraction < 1:
        raise SplitError(f"fraction must lie in (0, 1), got {fraction}")
    rng = np.random.default_rng(seed)
    edges = g.edges()
    n_remove = int(np.floor(fraction * len(edges)))
    if n_remove == 0:
        raise SplitError(f"fraction {fraction} removes no edge out of {len(edges)}")
    if n_remove >= len(edges):
        raise SplitError("fraction removes every edge")
    removed_mask = np.zeros(len(edges), dtype=bool)
    removed_mask[rng.choice(len(edges), size=n_remove, replace=False)] = True

    remaining = from_edge_array(g.num_nodes, edges[~removed_mask], g.node_labels())
    keep = largest_component_nodes(remaining)
    train_graph = induced_subgraph(remaining, keep)
    if train_graph.num_edges == 0:
        raise SplitError("training graph has no edges left")

    remap = np.full(g.num_nodes, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    positives = remap[edges[removed_mask]]
    positives = positives[(positives >= 0).all(axis=1)]
    if len(positives) == 0:
        raise SplitError("no removed edge has both endpoints in the training component")

    negatives = remap[_sample_non_edges(g, keep, len(positives), rng)]

    pairs = np.concatenate([positives, negatives])
    labels = np.concatenate([np.ones(len(positives), dtype=bool), np.zeros(len(negatives), dtype=bool)])
    assignment = _stratified_assignment(labels, rng)
    return LinkPredictionSplit(train_graph, keep, positives, negatives, pairs, labels, assignment, fraction)
