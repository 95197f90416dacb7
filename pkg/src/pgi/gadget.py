"""Coset trees, leaf products and the colored cone graph X(S).

Vertex labels are tuples of atoms, and every atom is itself a tuple of ints:
coset-tree nodes use ``(level, minimal representative)`` and the gadget tree
uses ``(color,)``. A leaf product concatenates labels, so nested products are
flattened automatically and the operation is associative on labels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import MalformedGraph, NotSeriesIso
from .groups import IsoMap, left_cosets
from .series import CompositionSeries

__all__ = [
    "Color",
    "RootedTree",
    "ColoredGraph",
    "build_coset_tree",
    "leaf_product",
    "build_gadget_M",
    "build_X",
    "map_series_iso_to_graph_iso",
    "element_vertex",
    "parse_graph",
    "format_graph",
    "read_graph",
    "write_graph",
]


class Color(IntEnum):
    INTERNAL = 0
    LEFT = 1
    RIGHT = 2
    EQUALS = 3


@dataclass(frozen=True)
class RootedTree:
    """Nodes are numbered 0..N-1 in (depth, label) order, so the root is node 0."""

    labels: tuple[tuple, ...]
    parents: tuple[int, ...]
    depths: tuple[int, ...]

    @property
    def root(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[tuple, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.labels]
        for v, p in enumerate(self.parents):
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @property
    def leaves(self) -> list[int]:
        return [v for v, k in enumerate(self.children) if not k]

    @property
    def height(self) -> int:
        return max(self.depths)

    def edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parents) if p >= 0]

    @classmethod
    def from_nodes(cls, nodes: dict[tuple, tuple | None]) -> "RootedTree":
        """Build from ``label -> parent label`` (None for the root)."""
        depth: dict[tuple, int] = {}

        def d(lab):
            if lab not in depth:
                par = nodes[lab]
                depth[lab] = 0 if par is None else d(par) + 1
            return depth[lab]

        roots = [lab for lab, par in nodes.items() if par is None]
        if len(roots) != 1:
            raise ValueError("a rooted tree needs exactly one root")
        order = sorted(nodes, key=lambda lab: (d(lab), lab))
        pos = {lab: i for i, lab in enumerate(order)}
        parents = tuple(-1 if nodes[lab] is None else pos[nodes[lab]] for lab in order)
        return cls(tuple(order), parents, tuple(depth[lab] for lab in order))


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected vertex-colored simple graph on vertices 0..V-1.

    ``edge_kind`` and ``labels`` are diagnostics for construction and tests;
    canonization looks only at ``colors`` and ``edges``.
    """

    vertex_count: int
    colors: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    edge_kind: tuple[str, ...] | None = field(default=None, compare=False, repr=False)
    labels: tuple[tuple, ...] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def make(cls, vertex_count: int, colors: Sequence[int], edges, edge_kind=None, labels=None):
        """Normalize edges to sorted (u, v) pairs with u < v and reject loops/multi-edges."""
        norm = []
        kinds = []
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise MalformedGraph(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise MalformedGraph(f"edge ({u}, {v}) out of range")
            norm.append((min(u, v), max(u, v)))
            if edge_kind is not None:
                kinds.append(edge_kind[i])
        order = sorted(range(len(norm)), key=norm.__getitem__)
        sorted_edges = tuple(norm[i] for i in order)
        if len(set(sorted_edges)) != len(sorted_edges):
            raise MalformedGraph("multi-edge")
        if len(colors) != vertex_count:
            raise MalformedGraph("color list length differs from vertex count")
        return cls(
            vertex_count,
            tuple(int(c) for c in colors),
            sorted_edges,
            tuple(kinds[i] for i in order) if edge_kind is not None else None,
            tuple(labels) if labels is not None else None,
        )

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(offsets, neighbors) int32 arrays."""
        deg = np.zeros(self.vertex_count + 1, dtype=np.int32)
        for a_i, a in enumerate(self.adjacency):
            deg[a_i + 1] = len(a)
        offsets = np.cumsum(deg, dtype=np.int64).astype(np.int32)
        nbrs = np.fromiter((w for a in self.adjacency for w in a), dtype=np.int32,
                           count=int(offsets[-1]))
        return offsets, nbrs

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def permuted(self, perm: Sequence[int]) -> "ColoredGraph":
        """Copy with vertex v renamed to ``perm[v]``."""
        colors = [0] * self.vertex_count
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        labels = None
        if self.labels is not None:
            lab = [None] * self.vertex_count
            for v, x in enumerate(self.labels):
                lab[perm[v]] = x
            labels = lab
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        return ColoredGraph.make(self.vertex_count, colors, edges, self.edge_kind, labels)

    def is_isomorphism(self, other: "ColoredGraph", mapping: Sequence[int]) -> bool:
        if self.vertex_count != other.vertex_count or len(self.edges) != len(other.edges):
            return False
        if sorted(mapping) != list(range(other.vertex_count)):
            return False
        if any(other.colors[mapping[v]] != c for v, c in enumerate(self.colors)):
            return False
        target = set(other.edges)
        for u, v in self.edges:
            a, b = mapping[u], mapping[v]
            if (min(a, b), max(a, b)) not in target:
                return False
        return True


# --- trees -----------------------------------------------------------------

def _coset_atoms(s: CompositionSeries):
    """For each level i, the cosets of G_i as {rep: elements}."""
    g = s.group
    return [dict(left_cosets(g, level)) for level in s.chain]


def build_coset_tree(s: CompositionSeries) -> RootedTree:
    """T(S): one node per coset of every G_i, children by containment; leaves are elements."""
    levels = _coset_atoms(s)
    m = s.length
    nodes: dict[tuple, tuple | None] = {}
    owner = [None] * s.group.n     # element -> label of its coset at the level above
    for i in range(m, -1, -1):
        new_owner = [None] * s.group.n
        for rep, elems in levels[i].items():
            lab = ((i, rep),)
            nodes[lab] = None if i == m else owner[rep]
            for x in elems:
                new_owner[x] = lab
        owner = new_owner
    return RootedTree.from_nodes(nodes)


def leaf_product(t1: RootedTree, t2: RootedTree) -> RootedTree:
    """Glue a copy of ``t2`` onto every leaf of ``t1``, identifying its root with the leaf."""
    nodes: dict[tuple, tuple | None] = {}
    for v, lab in enumerate(t1.labels):
        p = t1.parents[v]
        nodes[lab] = None if p < 0 else t1.labels[p]
    r2 = t2.root
    for x in t1.leaves:
        xl = t1.labels[x]
        for y, ylab in enumerate(t2.labels):
            if y == r2:
                continue
            p = t2.parents[y]
            nodes[xl + ylab] = xl if p == r2 else xl + t2.labels[p]
    return RootedTree.from_nodes(nodes)


_GADGET_ROOT = ((int(Color.INTERNAL),),)


def build_gadget_M() -> RootedTree:
    """Root joined to three leaves colored left, right and equals."""
    nodes: dict[tuple, tuple | None] = {_GADGET_ROOT: None}
    for c in (Color.LEFT, Color.RIGHT, Color.EQUALS):
        nodes[((int(c),),)] = _GADGET_ROOT
    return RootedTree.from_nodes(nodes)


def _pair_label(m: int, x: int, y: int) -> tuple:
    # label of the T(S) (.) T(S) leaf for the pair (x, y)
    return ((0, x),) if m == 0 else ((0, x), (0, y))


def element_vertex(x: int) -> tuple:
    """Label of the element vertex x inside X(S)."""
    return ((0, x),)


def build_X(s: CompositionSeries) -> ColoredGraph:
    """X(S): T(S) (.) T(S) (.) M plus, for every x, y, the cross path
    (x,y,left) - (y,x,right) - (xy,y,equals)."""
    g = s.group
    m = s.length
    t = build_coset_tree(s)
    tree = leaf_product(leaf_product(t, t), build_gadget_M())
    index = tree.index
    colors = [Color.INTERNAL] * len(tree)
    for v, lab in enumerate(tree.labels):
        if v != tree.root and tree.depths[v] == tree.height:
            colors[v] = Color(lab[-1][0])
    edges = tree.edges()
    kinds = ["tree"] * len(edges)
    left, right, equals = ((int(c),) for c in (Color.LEFT, Color.RIGHT, Color.EQUALS))
    for x in range(g.n):
        for y in range(g.n):
            a = index[_pair_label(m, x, y) + (left,)]
            b = index[_pair_label(m, y, x) + (right,)]
            c = index[_pair_label(m, g.table[x][y], y) + (equals,)]
            edges += [(a, b), (b, c)]
            kinds += ["cross", "cross"]
    return ColoredGraph.make(len(tree), colors, edges, kinds, tree.labels)


def map_series_iso_to_graph_iso(phi: IsoMap, s: CompositionSeries,
                                s2: CompositionSeries) -> list[int]:
    """The vertex bijection X(phi) = phi (.) phi (.) id_M from X(s) to X(s2)."""
    g, h = s.group, s2.group
    f = phi.forward
    if s.length != s2.length or g.n != h.n or len(f) != g.n:
        raise NotSeriesIso("series have different shapes")
    for i, (lo, hi) in enumerate(zip(s.chain, s2.chain)):
        if sorted(f[x] for x in lo) != list(hi):
            raise NotSeriesIso(f"phi does not map G_{i} onto H_{i}")
    atom_map = {}
    for i, cosets in enumerate(_coset_atoms(s)):
        for rep, elems in cosets.items():
            atom_map[(i, rep)] = (i, min(f[x] for x in elems))
    xs, xs2 = build_X(s), build_X(s2)
    index2 = {lab: v for v, lab in enumerate(xs2.labels)}

    def image(lab):
        return tuple(atom_map.get(a, a) if len(a) == 2 else a for a in lab)

    try:
        mapping = [index2[image(lab)] for lab in xs.labels]
    except KeyError:
        raise NotSeriesIso("phi does not induce a tree isomorphism") from None
    if not xs.is_isomorphism(xs2, mapping):
        raise NotSeriesIso("phi is not multiplicative")
    return mapping


# --- text format -----------------------------------------------------------

def format_graph(g: ColoredGraph) -> str:
    out = [f"p cgraph {g.vertex_count} {len(g.edges)}"]
    out += [f"n {v + 1} {c}" for v, c in enumerate(g.colors)]
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> ColoredGraph:
    header = None
    colors: dict[int, int] = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] in ("c", "#"):
            continue
        try:
            if tok[0] == "p" and len(tok) == 4 and tok[1] == "cgraph":
                header = (int(tok[2]), int(tok[3]))
            elif tok[0] == "n" and len(tok) == 3:
                colors[int(tok[1]) - 1] = int(tok[2])
            elif tok[0] == "e" and len(tok) == 3:
                edges.append((int(tok[1]) - 1, int(tok[2]) - 1))
            else:
                raise ValueError
        except ValueError:
            raise MalformedGraph(f"line {lineno}: cannot parse {line!r}") from None
    if header is None:
        raise MalformedGraph("missing 'p cgraph V E' header")
    nv, ne = header
    if len(edges) != ne:
        raise MalformedGraph(f"header declares {ne} edges, found {len(edges)}")
    if sorted(colors) != list(range(nv)):
        raise MalformedGraph("every vertex needs exactly one 'n' line")
    if any(c not in (0, 1, 2, 3) for c in colors.values()):
        raise MalformedGraph("color ids must be 0..3")
    return ColoredGraph.make(nv, [colors[v] for v in range(nv)], edges)


def read_graph(path) -> ColoredGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: ColoredGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))
