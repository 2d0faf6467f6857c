import gzip
import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from antiband.generators import (GRID_NAMES, GRID_OPTIMAL_LABELING, complete, cycle, example_grid,
                                 path, star)
from antiband.graph import (INF, Graph, GraphError, ParseError, antibandwidth, bfs_layers,
                            check_labeling, connected_components, is_connected, is_labeling,
                            label_distance, label_set_distance, parse_edge_list,
                            parse_matrix_market, read_graph, reversed_labeling, to_edge_list,
                            to_matrix_market, vertex_antibandwidth)

from helpers import DATA, graphs, labelings


def grid_vertex(c):
    return GRID_NAMES.index(c)


# -- parsing ------------------------------------------------------------------

def test_symmetric_pattern_drops_diagonal():
    g = read_graph(DATA / "tiny_symmetric.mtx")
    assert (g.n, g.m) == (3, 2)
    assert g.edges == ((0, 1), (1, 2))
    assert g.dropped_loops == 1


def test_general_real_matrix_merges_both_triangles():
    g = read_graph(DATA / "grid3x3_real.mtx")
    assert g == example_grid()


def test_edge_list_k2():
    g = parse_edge_list("2 1\n1 2")
    assert (g.n, g.m) == (2, 1)


def test_grid_edge_list_degrees():
    g = read_graph(DATA / "grid3x3.edges")
    assert (g.n, g.m) == (9, 12)
    assert g.max_degree == 4 and g.min_degree == 2
    assert g.max_degree_vertex() == grid_vertex("E")
    assert [v for v in range(9) if g.degree[v] == 2] == [grid_vertex(c) for c in "ACGI"]
    assert g.name == "grid3x3"


def test_edge_list_duplicates_dedup_by_default(caplog):
    g = parse_edge_list("3 2\n1 2\n1 2")
    assert g.m == 1 and g.dropped_duplicates == 1
    assert "duplicate" in caplog.text


def test_edge_list_duplicates_rejected_without_dedup():
    with pytest.raises((ParseError, GraphError)):
        parse_edge_list("3 2\n1 2\n1 2", dedup=False)


@pytest.mark.parametrize("text, line", [
    ("3 1\n1 4", 2),
    ("3 1\n2 2", 2),
    ("3 2\n1 2", None),
    ("3 1\n1 2\n2 3", 3),
    ("x y", 1),
])
def test_edge_list_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    if line is not None:
        assert info.value.line == line


@pytest.mark.parametrize("text", [
    "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n",
    "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n4 1\n",
    "%%MatrixMarket matrix coordinate pattern symmetric\n3 4 1\n2 1\n",
    "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n",
    "%%MatrixMarket matrix coordinate pattern symmetric\n0 0 0\n",
    "not a header\n",
])
def test_matrix_market_errors(text):
    with pytest.raises(ParseError):
        parse_matrix_market(text)


def test_matrix_market_error_reports_line():
    text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n2 1\n9 1\n"
    with pytest.raises(ParseError) as info:
        parse_matrix_market(text)
    assert info.value.line == 5


def test_read_gzip(tmp_path):
    p = tmp_path / "grid.mtx.gz"
    with gzip.open(p, "wt") as fh:
        fh.write(to_matrix_market(example_grid()))
    g = read_graph(p)
    assert g == example_grid() and g.name == "grid"


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=9))
def test_round_trip_both_formats(g):
    assert parse_matrix_market(to_matrix_market(g)) == g
    if g.m:
        assert parse_edge_list(to_edge_list(g)) == g


# -- connectivity and BFS ---------------------------------------------------

def test_connectivity_examples():
    assert is_connected(example_grid())
    assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_connected(Graph.from_edges(1, []))
    assert connected_components(Graph.from_edges(4, [(0, 1), (2, 3)])) == [[0, 1], [2, 3]]


def test_bfs_layers_grid_from_a():
    part = bfs_layers(example_grid(), grid_vertex("A"))
    names = [{GRID_NAMES[v] for v in layer} for layer in part.layers]
    assert names == [{"A"}, {"B", "D"}, {"C", "E", "G"}, {"F", "H"}, {"I"}]
    assert part.layer[grid_vertex("I")] == 4


def test_bfs_layers_small():
    assert [len(x) for x in bfs_layers(star(4), 0).layers] == [1, 4]
    assert [len(x) for x in bfs_layers(path(3), 1).layers] == [1, 2]


def test_bfs_layers_rejects_disconnected():
    with pytest.raises(GraphError):
        bfs_layers(Graph.from_edges(4, [(0, 1), (2, 3)]), 0)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=9), st.data())
def test_bfs_layer_edges_span_at_most_one_layer(g, data):
    if not is_connected(g):
        return
    root = data.draw(st.integers(0, g.n - 1))
    part = bfs_layers(g, root)
    assert sorted(v for layer in part.layers for v in layer) == list(range(g.n))
    for u, v in g.edges:
        assert abs(part.layer[u] - part.layer[v]) <= 1


# -- labelings ----------------------------------------------------------------

def test_label_distances():
    assert label_distance(6, 3) == 3
    assert label_set_distance(5, {5}) == 0
    assert label_set_distance(1, {3, 7, 9}) == 2
    with pytest.raises(ValueError):
        label_set_distance(1, [])


def test_vertex_antibandwidth_examples():
    g = example_grid()
    assert vertex_antibandwidth(g, GRID_OPTIMAL_LABELING, grid_vertex("C")) == 3
    iso = Graph.from_edges(3, [(0, 1)])
    assert vertex_antibandwidth(iso, [1, 2, 3], 2) == INF
    k2 = complete(2)
    assert [vertex_antibandwidth(k2, [1, 2], v) for v in (0, 1)] == [1, 1]


def test_antibandwidth_examples():
    g = example_grid()
    assert antibandwidth(g, GRID_OPTIMAL_LABELING) == 3
    assert antibandwidth(g, list(range(1, 10))) == 1
    assert antibandwidth(path(4), [3, 1, 4, 2]) == 2


def test_antibandwidth_rejects_bad_input():
    with pytest.raises(GraphError):
        antibandwidth(Graph.from_edges(3, []), [1, 2, 3])
    with pytest.raises(ValueError):
        antibandwidth(path(3), [1, 1, 2])
    assert not is_labeling([0, 1, 2], 3)
    with pytest.raises(ValueError):
        check_labeling(path(3), [1, 2])


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_antibandwidth_is_min_vertex_value_and_reversal_invariant(data):
    g = data.draw(graphs(min_n=2, max_n=9))
    if g.m == 0:
        return
    f = data.draw(labelings(g.n))
    ab = antibandwidth(g, f)
    assert ab == min(vertex_antibandwidth(g, f, v) for v in range(g.n))
    assert ab == min(abs(f[u] - f[v]) for u, v in g.edges)
    assert antibandwidth(g, reversed_labeling(f)) == ab
    assert 1 <= ab <= g.n - 1


def test_cycle_labeling_exhaustive_matches_definition():
    g = cycle(5)
    best = max(antibandwidth(g, p) for p in itertools.permutations(range(1, 6)))
    assert best == 2
    assert math.isinf(INF)
