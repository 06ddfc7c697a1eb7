import numpy as np
import pytest

from corewalk.exceptions import SplitError
from corewalk.evaluation import TEST, TRAIN, VALIDATION, confusion_counts, f1_score, make_split
from corewalk.graph import build_graph, from_edge_array, has_edge, is_connected, largest_connected_component
from oracles import f1_bruteforce, random_edges


def test_f1_examples():
    assert f1_score([1, 0, 1], [1, 0, 1]) == 1.0
    assert f1_score([0, 0, 0], [1, 0, 0]) == 0.0
    # TP=2 FP=1 FN=1
    assert f1_score([1, 1, 1, 0], [1, 1, 0, 1]) == pytest.approx(2 / 3)
    assert confusion_counts([1, 1, 1, 0, 0], [1, 1, 0, 1, 0]) == (2, 1, 1, 1)


def test_f1_length_mismatch():
    with pytest.raises(ValueError):
        f1_score([1, 0], [1])


def test_f1_property_1000_cases():
    rng = np.random.default_rng(99)
    for _ in range(1000):
        n = int(rng.integers(1, 40))
        pred = rng.random(n) < rng.random()
        lab = rng.random(n) < rng.random()
        assert f1_score(pred, lab) == f1_bruteforce(pred.tolist(), lab.tolist())


def test_remove_one_of_ten_edges():
    cycle = build_graph([(i, (i + 1) % 10) for i in range(10)])
    s = make_split(cycle, 0.1, seed=0)
    assert len(s.positives) == 1 and len(s.negatives) == 1
    assert s.train_graph.num_edges == 9 and is_connected(s.train_graph)


def test_complete_graph_has_no_negatives():
    k5 = build_graph([(i, j) for i in range(5) for j in range(i + 1, 5)])
    # one edge is removed and K5 stays connected, but K5 has no non-edge to balance it
    with pytest.raises(SplitError, match="non-edges"):
        make_split(k5, 0.1, seed=0)


def test_fraction_errors(triangle):
    with pytest.raises(SplitError):
        make_split(triangle, 0.0)
    with pytest.raises(SplitError):
        make_split(triangle, 1.0)
    with pytest.raises(SplitError):
        make_split(triangle, 0.2)


def test_distinct_positive_sets():
    from corewalk.datasets import cora_like
    g = cora_like(seed=0)
    sets = {frozenset(map(tuple, make_split(g, 0.1, seed=s).train_nodes[make_split(g, 0.1, seed=s).positives]
                          .tolist())) for s in range(5)}
    assert len(sets) == 5


def check_split_integrity(g, s):
    tg, nodes = s.train_graph, s.train_nodes
    assert is_connected(tg)
    assert len(s.positives) == len(s.negatives) > 0
    for u, v in s.positives:
        assert not has_edge(tg, u, v)
        assert has_edge(g, nodes[u], nodes[v])
    neg_keys = set()
    for u, v in s.negatives:
        assert u != v
        assert not has_edge(g, nodes[u], nodes[v])
        neg_keys.add((min(u, v), max(u, v)))
    assert len(neg_keys) == len(s.negatives)
    assert tg.num_edges + len(s.positives) <= g.num_edges
    assert set(np.unique(s.assignment)) <= {TRAIN, VALIDATION, TEST}
    for cls in (True, False):
        a = s.assignment[s.labels == cls]
        assert abs(np.sum(a == TEST) - 0.2 * len(a)) <= 0.5
        assert abs(np.sum(a == VALIDATION) - 0.1 * len(a)) <= 0.5


def test_split_integrity_50_graphs():
    rng = np.random.default_rng(17)
    done = rejected = 0
    while done < 50:
        n = int(rng.integers(10, 60))
        edges = random_edges(n, float(rng.uniform(0.1, 0.4)), rng)
        if not edges:
            continue
        g = largest_connected_component(from_edge_array(n, np.array(edges)))
        if g.num_edges < 10:
            continue
        try:
            s = make_split(g, float(rng.choice([0.1, 0.3, 0.5])), seed=int(rng.integers(1 << 30)))
        except SplitError:
            rejected += 1
            continue
        check_split_integrity(g, s)
        done += 1
    assert rejected < 10


def test_split_deterministic(path4):
    g = build_graph([(i, j) for i in range(8) for j in range(i + 1, 8) if (i + j) % 3])
    a, b = make_split(g, 0.3, seed=4), make_split(g, 0.3, seed=4)
    assert np.array_equal(a.pairs, b.pairs) and np.array_equal(a.assignment, b.assignment)
