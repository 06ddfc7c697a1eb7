import time

import numpy as np
import pytest

from corewalk.exceptions import DecompositionError, EmptyCoreError
from corewalk.graph import build_graph, from_edge_array
from corewalk.kcore import decompose, k_core_subgraph, shell_histogram_csv, shell_sequence
from oracles import core_numbers_bruteforce, random_edges


def _random_graph(rng, n, p):
    edges = random_edges(n, p, rng)
    return from_edge_array(n, np.array(edges, dtype=np.int64).reshape(-1, 2)), edges


def _min_degree(sub):
    return int(sub.degrees.min()) if sub.num_nodes else None


def test_triangle(triangle):
    d = decompose(triangle)
    assert list(d.core_index) == [2, 2, 2] and d.degeneracy == 2
    assert shell_sequence(d) == [(1, 0), (2, 3)]


def test_path(path4):
    d = decompose(path4)
    assert list(d.core_index) == [1, 1, 1, 1] and d.degeneracy == 1
    assert shell_sequence(d) == [(1, 4)]


def test_star():
    d = decompose(build_graph([(0, i) for i in range(1, 6)]))
    assert shell_sequence(d) == [(1, 6)]


def test_k_core_subgraph_examples(triangle):
    d = decompose(triangle)
    assert k_core_subgraph(triangle, d, 2).num_edges == 3
    g = build_graph([(0, 1), (1, 2), (2, 0), (0, 3)])
    core = k_core_subgraph(g, decompose(g), 2)
    assert core.num_nodes == 3 and set(core.labels) == {"0", "1", "2"}


def test_errors(triangle):
    d = decompose(triangle)
    with pytest.raises(EmptyCoreError):
        k_core_subgraph(triangle, d, 3)
    with pytest.raises(EmptyCoreError):
        k_core_subgraph(triangle, d, 0)
    with pytest.raises(DecompositionError):
        decompose(from_edge_array(3, np.zeros((0, 2), dtype=np.int64)))
    with pytest.raises(DecompositionError):
        decompose(from_edge_array(4, np.array([[0, 1], [1, 2]])))


def test_histogram_csv(triangle):
    assert shell_histogram_csv(decompose(triangle)) == "k,count\n1,0\n2,3\n"


def test_oracle_equivalence_200_graphs():
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    checked = 0
    for i in range(200):
        n = int(rng.integers(2, 13))
        p = (0.2, 0.4, 0.6)[i % 3]
        g, edges = _random_graph(rng, n, p)
        if g.num_edges == 0:
            continue
        expected = core_numbers_bruteforce(n, edges)
        if (g.degrees == 0).any():
            with pytest.raises(DecompositionError):
                decompose(g)
            # degree-0 nodes have core index 0 in the oracle; compare the rest
            keep = np.flatnonzero(g.degrees > 0)
            sub = from_edge_array(len(keep), np.searchsorted(keep, np.array(g.edges())))
            got = decompose(sub).core_index
            assert list(got) == [expected[v] for v in keep]
        else:
            assert list(decompose(g).core_index) == expected
        checked += 1
    assert checked > 150
    assert time.perf_counter() - start < 5.0


def test_medium_random_graphs_match_oracle():
    rng = np.random.default_rng(3)
    for _ in range(10):
        g, edges = _random_graph(rng, 30, 0.2)
        if (g.degrees == 0).any():
            continue
        assert list(decompose(g).core_index) == core_numbers_bruteforce(30, edges)


def _close(adj, alive, k):
    alive = set(alive)
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if len(adj[v] & alive) < k:
                alive.discard(v)
                changed = True
    return alive


def test_core_properties_on_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(4, 13))
        g, edges = _random_graph(rng, n, 0.5)
        if g.num_edges == 0 or (g.degrees == 0).any():
            continue
        d = decompose(g)
        assert np.all(d.core_index <= g.degrees)
        adj = {v: set(g.neighbors(v).tolist()) for v in range(n)}
        prev = set(range(n))
        for k in range(1, d.degeneracy + 1):
            core = set(d.core_nodes(k).tolist())
            assert core <= prev
            prev = core
            sub = k_core_subgraph(g, d, k)
            assert _min_degree(sub) >= k
            for v in set(range(n)) - core:
                assert _close(adj, core | {v}, k) == core
