import io
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corewalk.exceptions import EmptyGraphError, ParseError
from corewalk.graph import (build_graph, graph_stats, has_edge, induced_subgraph, is_connected,
                            largest_connected_component, parse_edge_list)


def test_parse_basic():
    assert parse_edge_list(b"0 1\n1 2\n").pairs == [("0", "1"), ("1", "2")]


def test_parse_skips_comments():
    assert parse_edge_list("# c\n0 1\n").pairs == [("0", "1")]
    assert parse_edge_list("% matrix market style\n\n0 1\n").pairs == [("0", "1")]


def test_parse_opaque_ids_and_extra_tokens():
    assert parse_edge_list("a b\nb c\n").pairs == [("a", "b"), ("b", "c")]
    assert parse_edge_list("a\tb 0.7 extra\n").pairs == [("a", "b")]


def test_parse_reads_binary_file():
    assert len(parse_edge_list(io.BytesIO(b"1 2\n2 3\n"))) == 2


def test_parse_error_reports_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_edge_list("0 1\n7\n")


def test_build_dedup_and_self_loops():
    g = build_graph([(0, 1), (1, 0), (1, 1)])
    assert g.num_nodes == 2
    assert g.num_edges == 1
    assert g.stats == {"self_loops_removed": 1, "duplicates_removed": 1}


def test_build_first_appearance_ids():
    g = build_graph(parse_edge_list("x y\nz x\n"))
    assert g.labels == ("x", "y", "z")
    assert has_edge(g, 0, 2) and not has_edge(g, 1, 2)


def test_triangle_degrees(triangle):
    assert list(triangle.degrees) == [2, 2, 2]


def test_empty_edge_list():
    with pytest.raises(EmptyGraphError):
        build_graph([])


def test_has_edge(triangle, path4):
    assert has_edge(triangle, 0, 1)
    assert not has_edge(triangle, 0, 0)
    assert not has_edge(path4, 0, 2)
    with pytest.raises(IndexError):
        has_edge(triangle, 0, 3)


def test_lcc_connected_graph_unchanged():
    g = build_graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
    assert largest_connected_component(g).num_nodes == 6


def test_lcc_picks_larger():
    g = build_graph([(0, 1), (1, 2), (2, 0), (3, 4)])
    lcc = largest_connected_component(g)
    assert lcc.num_nodes == 3 and lcc.labels == ("0", "1", "2")


def test_lcc_tie_breaks_on_smallest_id():
    g = build_graph([("a", "b"), ("c", "d"), ("d", "e"), ("e", "c"), ("b", "f"), ("f", "a")])
    lcc = largest_connected_component(g)
    assert set(lcc.labels) == {"a", "b", "f"}


def test_lcc_drops_isolated_nodes():
    g = build_graph([(0, 1), (1, 2), (5, 5)])
    assert g.num_nodes == 4
    assert largest_connected_component(g).num_nodes == 3


def test_induced_subgraph_examples(triangle):
    sub = induced_subgraph(triangle, {0, 1})
    assert sub.num_nodes == 2 and sub.num_edges == 1
    k4 = build_graph([(i, j) for i in range(4) for j in range(i + 1, 4)])
    tri = induced_subgraph(k4, [0, 2, 3])
    assert tri.num_edges == 3 and list(tri.degrees) == [2, 2, 2]
    assert induced_subgraph(triangle, []).num_nodes == 0


def test_stats_json():
    g = build_graph([(0, 1), (1, 0), (2, 2), (3, 4)])
    stats = graph_stats(g)
    assert stats == {"nodes": 5, "edges": 2, "self_loops_removed": 1, "duplicates_removed": 1,
                     "components": 3, "lcc_nodes": 2, "lcc_edges": 1}
    json.dumps(stats)


edge_lists = st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), min_size=1, max_size=60)


def _edge_set(g):
    return {frozenset((g.label(u), g.label(v))) for u, v in g.edges()}


@settings(max_examples=200, deadline=None)
@given(edge_lists)
def test_graph_invariants(edges):
    g = build_graph(edges)
    for u in range(g.num_nodes):
        nbrs = g.neighbors(u)
        assert np.all(np.diff(nbrs) > 0)
        assert u not in nbrs
        for v in nbrs:
            assert has_edge(g, v, u)
    assert g.degrees.sum() == 2 * g.num_edges


@settings(max_examples=100, deadline=None)
@given(edge_lists)
def test_round_trip_through_text(edges):
    g = build_graph(edges)
    text = g.to_edge_list_text()
    if not text:
        return
    h = build_graph(parse_edge_list(text))
    assert _edge_set(h) == _edge_set(g)


@settings(max_examples=100, deadline=None)
@given(edge_lists, st.data())
def test_induced_subgraph_properties(edges, data):
    g = build_graph(edges)
    nodes = list(range(g.num_nodes))
    assert _edge_set(induced_subgraph(g, nodes)) == _edge_set(g)
    small = set(data.draw(st.lists(st.sampled_from(nodes), max_size=len(nodes))))
    big = small | set(data.draw(st.lists(st.sampled_from(nodes), max_size=len(nodes))))
    s1, s2 = induced_subgraph(g, small), induced_subgraph(g, big)
    assert _edge_set(s1) <= _edge_set(s2) <= _edge_set(g)
    expected = {frozenset((g.label(u), g.label(v))) for u, v in g.edges() if u in small and v in small}
    assert _edge_set(s1) == expected


@settings(max_examples=100, deadline=None)
@given(edge_lists)
def test_lcc_is_connected(edges):
    g = build_graph(edges)
    lcc = largest_connected_component(g)
    assert is_connected(lcc)
