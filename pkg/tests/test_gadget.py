import itertools

import pytest

from pgi.errors import MalformedGraph, NotSeriesIso
from pgi.gadget import (
    Color,
    ColoredGraph,
    RootedTree,
    build_coset_tree,
    build_gadget_M,
    build_X,
    element_vertex,
    format_graph,
    leaf_product,
    map_series_iso_to_graph_iso,
    parse_graph,
)
from pgi.groups import IsoMap
from pgi.series import CompositionSeries, enumerate_composition_series

from conftest import CORPUS, cyclic, elem_ab
from oracles import iter_isomorphisms


def star(k):
    nodes = {((0,),): None}
    for i in range(k):
        nodes[((1, i),)] = ((0,),)
    return RootedTree.from_nodes(nodes)


def test_coset_tree_c2():
    (s,) = enumerate_composition_series(cyclic(2))
    t = build_coset_tree(s)
    assert len(t) == 3 and len(t.leaves) == 2 and t.height == 1


def test_coset_tree_c4():
    (s,) = enumerate_composition_series(cyclic(4))
    t = build_coset_tree(s)
    assert len(t) == 7 and len(t.leaves) == 4 and t.height == 2
    # leaves are the elements, numbered after the inner nodes
    assert sorted(t.labels[v] for v in t.leaves) == [((0, x),) for x in range(4)]


def test_leaf_product_counts():
    t = leaf_product(star(2), star(2))
    assert len(t) == 7 and len(t.leaves) == 4 and t.height == 2


def test_leaf_product_associative_on_labels():
    (s,) = enumerate_composition_series(cyclic(2))
    t, m = build_coset_tree(s), build_gadget_M()
    left = leaf_product(leaf_product(t, t), m)
    right = leaf_product(t, leaf_product(t, m))
    assert left == right


def test_gadget_M():
    m = build_gadget_M()
    assert len(m) == 4 and len(m.leaves) == 3


def _series(name, i=0):
    return enumerate_composition_series(CORPUS[name])[i]


def test_X_c2_counts():
    x = build_X(_series("C2"))
    kinds = x.edge_kind
    assert x.vertex_count == 19
    assert kinds.count("tree") == 18 and kinds.count("cross") == 8


def test_X_trivial():
    x = build_X(CompositionSeries(cyclic(1), ((0,),)))
    assert x.vertex_count == 4
    assert x.edge_kind.count("tree") == 3 and x.edge_kind.count("cross") == 2


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "Klein", "C2^3", "D4", "Q8", "C9", "A4", "C6"])
def test_X_shape(name):
    g = CORPUS[name]
    for s in enumerate_composition_series(g)[:3]:
        x = build_X(s)
        n = g.n
        for c in (Color.LEFT, Color.RIGHT, Color.EQUALS):
            assert x.colors.count(c) == n * n
        assert x.edge_kind.count("cross") == 2 * n * n
        assert x.vertex_count <= 7 * n * n and len(x.edges) <= 7 * n * n
        # the tree part is a tree
        assert x.edge_kind.count("tree") == x.vertex_count - 1


@pytest.mark.parametrize("name", ["C2", "C4", "Klein", "C2^3", "D4", "Q8", "C8"])
def test_X_degree_for_2_groups(name):
    for s in enumerate_composition_series(CORPUS[name])[:3]:
        assert build_X(s).max_degree <= 4


@pytest.mark.parametrize("name", ["C4", "Klein", "C6", "D3"])
def test_left_right_path_unique(name):
    # for each ordered pair (x, y): exactly one left leaf below x is joined to a right leaf below y
    s = _series(name)
    x = build_X(s)
    n = s.group.n
    hits = {}
    for u, v in x.edges:
        a, b = sorted((u, v), key=lambda w: x.colors[w])
        if x.colors[a] == Color.LEFT and x.colors[b] == Color.RIGHT:
            key = (x.labels[a][0], x.labels[b][0])
            hits[key] = hits.get(key, 0) + 1
    assert len(hits) == n * n and set(hits.values()) == {1}


def test_element_vertices_present():
    s = _series("D4", 2)
    x = build_X(s)
    idx = {lab: v for v, lab in enumerate(x.labels)}
    assert all(element_vertex(e) in idx for e in range(8))


class TestFunctor:
    def test_identity(self):
        s = _series("D4", 1)
        mapping = map_series_iso_to_graph_iso(IsoMap(tuple(range(8))), s, s)
        assert mapping == list(range(build_X(s).vertex_count))

    def test_c4_inversion(self):
        (s,) = enumerate_composition_series(cyclic(4))
        mapping = map_series_iso_to_graph_iso(IsoMap((0, 3, 2, 1)), s, s)
        assert mapping != list(range(len(mapping)))

    def test_klein_swap(self):
        g = elem_ab(2, 2)
        # the series with G_1 = {0, 3}; swapping 1 and 2 fixes it
        (s,) = [t for t in enumerate_composition_series(g) if t.chain[1] == (0, 3)]
        map_series_iso_to_graph_iso(IsoMap((0, 2, 1, 3)), s, s)

    def test_rejects_non_series_map(self):
        g = elem_ab(2, 2)
        (s,) = [t for t in enumerate_composition_series(g) if t.chain[1] == (0, 3)]
        with pytest.raises(NotSeriesIso):
            map_series_iso_to_graph_iso(IsoMap((0, 3, 2, 1)), s, s)

    def test_composition(self):
        g = CORPUS["D4"]
        s = _series("D4", 0)
        autos = [phi for phi in iter_isomorphisms(g, g)
                 if all(sorted(phi[x] for x in lvl) == list(lvl) for lvl in s.chain)]
        assert len(autos) > 1
        for f1, f2 in itertools.product(autos[:4], repeat=2):
            comp = tuple(f2[f1[x]] for x in range(g.n))
            m1 = map_series_iso_to_graph_iso(IsoMap(tuple(f1)), s, s)
            m2 = map_series_iso_to_graph_iso(IsoMap(tuple(f2)), s, s)
            mc = map_series_iso_to_graph_iso(IsoMap(comp), s, s)
            assert mc == [m2[m1[v]] for v in range(len(m1))]


class TestColoredGraph:
    def test_rejects_loop(self):
        with pytest.raises(MalformedGraph):
            ColoredGraph.make(2, [0, 0], [(0, 0)])

    def test_rejects_multi_edge(self):
        with pytest.raises(MalformedGraph):
            ColoredGraph.make(2, [0, 0], [(0, 1), (1, 0)])

    def test_format_roundtrip(self):
        x = build_X(_series("C3"))
        y = parse_graph(format_graph(x))
        assert (y.vertex_count, y.colors, y.edges) == (x.vertex_count, x.colors, x.edges)

    def test_format_exact(self):
        g = ColoredGraph.make(3, [0, 1, 0], [(1, 0), (1, 2)])
        assert format_graph(g) == "p cgraph 3 2\nn 1 0\nn 2 1\nn 3 0\ne 1 2\ne 2 3\n"

    @pytest.mark.parametrize("text", [
        "n 1 0\n",
        "p cgraph 2 1\nn 1 0\nn 2 0\n",
        "p cgraph 1 0\nn 1 7\n",
        "p cgraph 2 0\nn 1 0\n",
        "p cgraph 2 1\nn 1 0\nn 2 0\ne 1 x\n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(MalformedGraph):
            parse_graph(text)
