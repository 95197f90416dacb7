"""Composition-series isomorphism and canonization through X(S).

``reconstruct_series`` reads a group and a subgroup chain back out of any
graph isomorphic to some X(S) using only colors and edges, so applying it to
the canonically relabeled X(S) gives a canonical form for the series.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InternalContradiction, MalformedGraph, PGIError
from .gadget import Color, ColoredGraph, build_X, element_vertex
from .graphcanon import CanonicalCertificate, canonical_form, find_isomorphism
from .groups import GroupTable, IsoMap, validate_group
from .series import CompositionSeries, validate_series

__all__ = [
    "SeriesIso",
    "CanonicalSeries",
    "series_isomorphic",
    "reconstruct_series",
    "canon_series",
    "element_vertices",
]


@dataclass(frozen=True)
class SeriesIso:
    phi: IsoMap
    level_check: tuple[bool, ...]


@dataclass(frozen=True)
class CanonicalSeries:
    group_table: GroupTable
    chain: tuple[tuple[int, ...], ...]
    source_certificate: CanonicalCertificate | None = None

    def as_series(self) -> CompositionSeries:
        return CompositionSeries(self.group_table, self.chain)

    def key(self):
        return (self.group_table.table, self.chain)

    def __eq__(self, other):
        if not isinstance(other, CanonicalSeries):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def dumps(self) -> str:
        """Group file followed by one ``chain`` line per level (1-based ids)."""
        lines = [self.group_table.dumps().rstrip("\n")]
        for level in self.chain:
            lines.append("chain " + " ".join(str(x + 1) for x in level))
        return "\n".join(lines) + "\n"


def element_vertices(s: CompositionSeries, graph: ColoredGraph) -> list[int]:
    """Vertex of X(S) standing for each group element, from provenance labels."""
    index = {lab: v for v, lab in enumerate(graph.labels)}
    return [index[element_vertex(x)] for x in range(s.group.n)]


def series_isomorphic(s: CompositionSeries, s2: CompositionSeries,
                      cert1: CanonicalCertificate | None = None,
                      x1: ColoredGraph | None = None) -> SeriesIso | None:
    """An isomorphism mapping every level of ``s`` onto the matching level of ``s2``.

    Decided by graph isomorphism of X(s) and X(s2); the returned map is the
    graph isomorphism restricted to the element vertices.
    """
    g, h = s.group, s2.group
    if g.n != h.n or s.length != s2.length:
        return None
    x1 = x1 if x1 is not None else build_X(s)
    x2 = build_X(s2)
    theta = find_isomorphism(x1, x2, cert1=cert1)
    if theta is None:
        return None
    ev1, ev2 = element_vertices(s, x1), element_vertices(s2, x2)
    back = {v: x for x, v in enumerate(ev2)}
    try:
        phi = IsoMap(tuple(back[theta[v]] for v in ev1))
    except KeyError:
        raise InternalContradiction("graph isomorphism moves an element vertex off the element level") from None
    if not phi.is_isomorphism(g, h):
        raise InternalContradiction("restricted map is not a group isomorphism")
    checks = tuple(sorted(phi(x) for x in lo) == list(hi) for lo, hi in zip(s.chain, s2.chain))
    if not all(checks):
        raise InternalContradiction("restricted map does not preserve the series")
    return SeriesIso(phi, checks)


def _bfs(adj, start, allowed):
    dist = {start: 0}
    parent = {start: -1}
    q = deque([start])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u in allowed and u not in dist:
                dist[u] = dist[v] + 1
                parent[u] = v
                q.append(u)
    return dist, parent


def reconstruct_series(a: ColoredGraph, certificate: CanonicalCertificate | None = None) -> CanonicalSeries:
    """Recover the series encoded by a graph isomorphic to some X(S).

    Group elements are numbered by vertex index, so on a canonically
    relabeled graph the result is canonical.
    """
    adj = a.adjacency
    colors = a.colors
    internal = {v for v in range(a.vertex_count) if colors[v] == Color.INTERNAL}
    gadget = [v for v in range(a.vertex_count) if colors[v] != Color.INTERNAL]
    if not internal or not gadget:
        raise MalformedGraph("graph lacks internal or gadget vertices")
    # each gadget leaf hangs off exactly one internal vertex
    gadget_parent = {}
    for v in gadget:
        ps = [u for u in adj[v] if u in internal]
        if len(ps) != 1:
            raise MalformedGraph(f"gadget vertex {v} has {len(ps)} internal neighbors")
        gadget_parent[v] = ps[0]
    bottoms = set(gadget_parent.values())

    # the internal tree's center is the root: all its leaves sit at equal depth
    first = min(bottoms)
    d1, _ = _bfs(adj, first, internal)
    if len(d1) != len(internal):
        raise MalformedGraph("internal vertices do not form a connected tree")
    far = max(d1, key=lambda v: (d1[v], v))
    d2, par2 = _bfs(adj, far, internal)
    other = max(d2, key=lambda v: (d2[v], v))
    diameter = d2[other]
    if diameter % 2:
        raise MalformedGraph("internal tree has no central vertex")
    root = other
    for _ in range(diameter // 2):
        root = par2[root]
    depth, parent = _bfs(adj, root, internal)
    height = diameter // 2
    if height % 2:
        raise MalformedGraph("tree height is not even")
    m = height // 2
    internal_edges = sum(1 for v in internal for u in adj[v] if u in internal) // 2
    if internal_edges != len(internal) - 1:
        raise MalformedGraph("internal vertices do not form a tree")
    if any(depth[v] != height for v in bottoms) or any(
            depth[v] == height and v not in bottoms for v in internal):
        raise MalformedGraph("gadget attachment points are not exactly the deepest tree vertices")

    elements = sorted(v for v in internal if depth[v] == m)
    n = len(elements)
    elem_id = {v: i for i, v in enumerate(elements)}

    def element_above(v):
        while depth[v] > m:
            v = parent[v]
        return elem_id[v]

    owner = {v: element_above(gadget_parent[v]) for v in gadget}
    table = [[-1] * n for _ in range(n)]
    seen = 0
    for v in gadget:
        if colors[v] != Color.LEFT:
            continue
        rights = [u for u in adj[v] if colors[u] == Color.RIGHT]
        if len(rights) != 1:
            raise MalformedGraph(f"left vertex {v} has {len(rights)} right neighbors")
        r = rights[0]
        eqs = [u for u in adj[r] if colors[u] == Color.EQUALS]
        if len(eqs) != 1:
            raise MalformedGraph(f"right vertex {r} has {len(eqs)} equals neighbors")
        x, y, z = owner[v], owner[r], owner[eqs[0]]
        if table[x][y] != -1:
            raise MalformedGraph(f"product of elements {x} and {y} is defined twice")
        table[x][y] = z
        seen += 1
    if seen != n * n or len(gadget) != 3 * n * n:
        raise MalformedGraph("multiplication gadgets do not cover every ordered pair")
    try:
        grp = validate_group([[z + 1 for z in row] for row in table])
    except PGIError as exc:
        raise MalformedGraph(f"recovered table is not a group: {exc}") from None

    # level i of the chain: elements below the ancestor of the identity at depth m - i
    v = elements[grp.identity]
    anc = [v]
    while parent[v] != -1:
        v = parent[v]
        anc.append(v)
    if len(anc) != m + 1:
        raise MalformedGraph("identity vertex is not at the element level")
    children: dict[int, list[int]] = {}
    for u, p in parent.items():
        if p != -1:
            children.setdefault(p, []).append(u)

    def elements_below(top):
        out, stack = [], [top]
        while stack:
            u = stack.pop()
            if depth[u] == m:
                out.append(elem_id[u])
            else:
                stack.extend(children.get(u, ()))
        return tuple(sorted(out))

    chain = tuple(elements_below(anc[i]) for i in range(m + 1))
    result = CanonicalSeries(grp, chain, certificate)
    problems = validate_series(result.as_series())
    if problems:
        raise MalformedGraph("recovered chain is not a composition series: " + "; ".join(problems))
    # every tree vertex i levels above the elements must hold a left coset of G_i
    for v in internal:
        i = m - depth[v]
        if 0 <= i <= m:
            below = elements_below(v)
            x = below[0]
            if below != tuple(sorted(grp.table[x][k] for k in chain[i])):
                raise MalformedGraph(f"tree vertex {v} does not hold a left coset of G_{i}")
    return result


def canon_series(s: CompositionSeries) -> CanonicalSeries:
    """Y(Can(X(s))): equal outputs exactly for isomorphic series."""
    x = build_X(s)
    cert = canonical_form(x)
    relabeled = ColoredGraph.make(x.vertex_count, [x.colors[v] for v in cert.order],
                                  _relabel_edges(x, cert))
    return reconstruct_series(relabeled, cert)


def _relabel_edges(x: ColoredGraph, cert: CanonicalCertificate):
    pos = cert.relabeling
    return [(pos[u], pos[v]) for u, v in x.edges]
