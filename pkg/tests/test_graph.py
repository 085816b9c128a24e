import numpy as np
import pytest

from khcore.graph import (AliveMask, EmptyGraphError, Graph, GraphError, ParseError, h_bfs,
                          h_degree, induced_diameter_leq, load_edge_list)

from helpers import path, triangle_pendant


def write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_basic(tmp_path):
    g = load_edge_list(write(tmp_path, "0 1\n1 2\n2 0\n2 3\n"))
    assert (g.n, g.m) == (4, 4)


def test_load_collapses_duplicates_and_self_loops(tmp_path):
    g = load_edge_list(write(tmp_path, "0 1\n1 0\n0 0\n"))
    assert (g.n, g.m) == (2, 1)


def test_load_comments_and_labels(tmp_path):
    g = load_edge_list(write(tmp_path, "# header\n% other\n\nb a\na c\n"))
    assert [g.label_of(i) for i in range(g.n)] == ["b", "a", "c"]
    assert g.id_of("c") == 2
    with pytest.raises(GraphError):
        g.id_of("zz")


def test_load_malformed_line_reports_number(tmp_path):
    with pytest.raises(ParseError) as exc:
        load_edge_list(write(tmp_path, "0 1\n1 2 3\n"))
    assert exc.value.line == 2


def test_load_empty(tmp_path):
    with pytest.raises(EmptyGraphError):
        load_edge_list(write(tmp_path, "# nothing\n"))


def test_graph_is_simple_and_symmetric():
    g = Graph.from_edges([(0, 1), (1, 0), (2, 2), (1, 2), (3, 1)])
    for v in range(g.n):
        nb = g.neighbors(v).tolist()
        assert nb == sorted(set(nb)) and v not in nb
        for u in nb:
            assert v in g.neighbors(u).tolist()


def test_h_bfs_path():
    g = path(5)
    full = AliveMask.full(5)
    assert h_bfs(g, full, 0, 2).as_dict() == {1: 1, 2: 2}
    assert h_degree(g, full, 2, 2) == 4


def test_h_bfs_respects_mask():
    g = triangle_pendant()
    mask = AliveMask.full(4)
    mask.kill(2)
    assert h_bfs(g, mask, 0, 2).as_dict() == {1: 1}
    with pytest.raises(GraphError):
        h_bfs(g, mask, 2, 2)
    with pytest.raises(GraphError):
        h_bfs(g, AliveMask.full(4), 0, 0)


def test_alive_mask_count():
    m = AliveMask.from_subset(6, [1, 3, 5])
    assert len(m) == 3 and 3 in m and 2 not in m
    m.kill(3)
    m.kill(3)
    assert len(m) == 2 and m.vertices().tolist() == [1, 5]


def test_induced_diameter():
    g = path(5)
    assert induced_diameter_leq(g, [0, 1, 2], 2)
    assert not induced_diameter_leq(g, [0, 2], 2)  # disconnected once 1 is gone
    assert induced_diameter_leq(g, range(5), 4)


def test_subgraph_keeps_labels():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3)], labels=["a", "b", "c", "d"])
    sub, ids = g.subgraph([1, 2, 3])
    assert ids.tolist() == [1, 2, 3]
    assert sub.m == 2
    assert np.array_equal(np.sort(sub.neighbors(1)), [0, 2])
