import pytest

from quadbed.gadgets import catalog
from quadbed.hardware import (
    CellView,
    chimera,
    chimera_cell,
    export_dot,
    export_edge_list,
    find_native_k4,
    has_triangle,
    is_bipartite,
    pegasus,
    pegasus_cell,
)


@pytest.mark.parametrize(
    "m,n,t,vertices,edges",
    [(1, 1, 4, 8, 16), (2, 2, 4, 32, 80), (1, 1, 1, 2, 1), (3, 3, 4, 72, 192)],
)
def test_chimera_counts(m, n, t, vertices, edges):
    g = chimera(m, n, t)
    assert g.n == vertices == 2 * t * m * n
    assert g.edge_count() == edges == t * t * m * n + t * n * (m - 1) + t * m * (n - 1)


@pytest.mark.parametrize("m,n,t", [(1, 1, 4), (2, 2, 4), (3, 3, 4)])
def test_chimera_bipartite_and_triangle_free(m, n, t):
    g = chimera(m, n, t)
    assert is_bipartite(g) is not None
    assert not has_triangle(g)
    assert find_native_k4(g) is None


def test_chimera_interior_degree():
    g = chimera(3, 3, 4)
    # interior cell (1,1): every vertex has degree t + 2
    for u in (0, 1):
        for k in range(4):
            assert g.degree(g.index_of((1, 1, u, k))) == 6


def test_chimera_rejects_bad_params():
    with pytest.raises(ValueError):
        chimera(0, 1, 4)
    with pytest.raises(ValueError):
        chimera(1, 1, 0)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_pegasus_vertex_count(m):
    assert pegasus(m).n == 8 * (m - 1) * (3 * m - 1)


def test_pegasus_2_structure():
    g = pegasus(2)
    assert g.n == 40
    assert find_native_k4(g) is not None
    assert max(g.degree(v) for v in range(g.n)) <= 15


def test_pegasus_degree_bound_attained():
    g = pegasus(4)
    degrees = [g.degree(v) for v in range(g.n)]
    assert max(degrees) == 15


def test_pegasus_adjacency_symmetric_no_self_loops():
    g = pegasus(2)
    for v in range(g.n):
        assert v not in g.adjacency[v]
        for u in g.adjacency[v]:
            assert v in g.adjacency[u]


def test_pegasus_rejects_small_m():
    with pytest.raises(ValueError):
        pegasus(1)


@pytest.mark.slow
def test_pegasus_16_count():
    assert pegasus(16).n == 5640


def test_cell_view_induced_property():
    g = chimera(2, 2, 4)
    cell = chimera_cell(g, 0, 0)
    adj = cell.adjacency
    for v, nbrs in adj.items():
        for u in nbrs:
            assert g.has_edge(u, v)
        outside = g.adjacency[v] - set(cell.vertices)
        assert not (nbrs & outside)
    host = cell.as_host()
    assert host.n == 8 and host.edge_count() == 16


def test_pegasus_cell_contains_k4():
    g = pegasus(2)
    cell = pegasus_cell(g)
    sub = cell.as_host()
    assert find_native_k4(sub) is not None


def test_export_edge_list_format():
    g = chimera(1, 1, 1)
    text = export_edge_list(g)
    lines = text.strip().splitlines()
    assert lines[0].startswith("#")
    assert lines[-1] == "0 1"
    assert "# 0 (0,0,0,0)" in lines


def test_export_dot_host():
    text = export_dot(chimera(1, 1, 1))
    assert text.startswith("graph G {")
    assert text.count(" -- ") == 1


def test_export_dot_gadget_highlights_aux():
    text = export_dot(catalog()["K4"])
    assert text.count(" -- ") == 6
    assert "color=red" in text  # aux vertex styling


def test_export_dot_grey_unused_and_thick_chains():
    from quadbed.embed import EmbedLimits, embed_search

    g = chimera(1, 1, 4)
    emb = embed_search(catalog()["K4"], g, EmbedLimits(2, 2))
    text = export_dot(g, embedding=emb)
    assert "penwidth=3" in text
    assert "color=grey" in text
