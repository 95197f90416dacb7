"""Canonical labeling and isomorphism of vertex-colored graphs.

Individualization-refinement search: the root partition is the color classes
refined to an equitable partition, each node branches on the vertices of its
first smallest non-singleton cell, and every discrete leaf yields a candidate
relabeling. The canonical labeling is the leaf with the lexicographically
least encoding. Two leaves with equal encodings give an automorphism, and
automorphisms fixing a node's individualized vertices prune its children to
one per orbit.

The refinement kernel is compiled when the ``_refine_ext`` extension is
available; set ``PGI_PURE_PYTHON=1`` to force the Python kernel.
"""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gadget import ColoredGraph

if os.environ.get("PGI_PURE_PYTHON"):
    from ._refine_py import refine as _refine
    KERNEL = "python"
else:
    try:
        from ._refine_ext import refine as _refine
        KERNEL = "compiled"
    except ImportError:
        from ._refine_py import refine as _refine
        KERNEL = "python"

__all__ = [
    "CanonicalCertificate",
    "color_refine",
    "equitable_partition",
    "canonical_form",
    "find_isomorphism",
    "encode",
    "KERNEL",
]

Coloring = tuple[int, ...]


@dataclass(frozen=True)
class CanonicalCertificate:
    """``order[i]`` is the input vertex placed at canonical position i."""

    order: tuple[int, ...]
    encoding: bytes
    leaves: int = 0

    @property
    def relabeling(self) -> list[int]:
        """Maps each input vertex to its canonical position."""
        perm = [0] * len(self.order)
        for i, v in enumerate(self.order):
            perm[v] = i
        return perm

    def hex(self) -> str:
        return self.encoding.hex()


def color_refine(g: ColoredGraph, init: Sequence[int] | None = None) -> Coloring:
    """Coarsest equitable refinement of ``init`` (default: the graph's colors).

    Each round recolors a vertex by (its class, sorted multiset of neighbor
    classes); classes are renumbered in sorted order of those keys, so the
    result does not depend on the vertex numbering.
    """
    colors = list(g.colors if init is None else init)
    if len(colors) != g.vertex_count:
        raise ValueError("initial coloring has the wrong length")
    adj = g.adjacency
    # renumber the initial classes contiguously, keeping their relative order
    ranks = {c: i for i, c in enumerate(sorted(set(colors)))}
    colors = [ranks[c] for c in colors]
    while True:
        keys = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(g.vertex_count)]
        ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [ranks[k] for k in keys]
        if len(ranks) == len(set(colors)):
            return tuple(new)
        colors = new


class _Partition:
    __slots__ = ("lab", "pos", "cell", "size")

    def __init__(self, lab, pos, cell, size):
        self.lab, self.pos, self.cell, self.size = lab, pos, cell, size

    def copy(self) -> "_Partition":
        return _Partition(self.lab.copy(), self.pos.copy(), self.cell.copy(), self.size.copy())

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> tuple["_Partition", list[int]]:
        n = len(colors)
        lab = np.array(sorted(range(n), key=lambda v: (colors[v], v)), dtype=np.int32)
        pos = np.empty(n, dtype=np.int32)
        pos[lab] = np.arange(n, dtype=np.int32)
        cell = np.empty(n, dtype=np.int32)
        size = np.zeros(n, dtype=np.int32)
        starts = []
        i = 0
        while i < n:
            j = i
            while j < n and colors[lab[j]] == colors[lab[i]]:
                j += 1
            cell[lab[i:j]] = i
            size[i] = j - i
            starts.append(i)
            i = j
        return cls(lab, pos, cell, size), starts

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell, or -1 if discrete."""
        n = len(self.lab)
        best, best_size = -1, n + 1
        i = 0
        size = self.size
        while i < n:
            k = int(size[i])
            if 1 < k < best_size:
                best, best_size = i, k
                if k == 2:
                    break
            i += k
        return best

    def individualize(self, v: int) -> int:
        """Split v off the front of its cell; returns the new singleton's start."""
        s = int(self.cell[v])
        k = int(self.size[s])
        p = int(self.pos[v])
        w = int(self.lab[s])
        self.lab[s], self.lab[p] = v, w
        self.pos[v], self.pos[w] = s, p
        self.size[s] = 1
        self.size[s + 1] = k - 1
        self.cell[self.lab[s + 1:s + k]] = s + 1
        return s

    def cells(self) -> list[list[int]]:
        out, i, n = [], 0, len(self.lab)
        while i < n:
            k = int(self.size[i])
            out.append(sorted(int(v) for v in self.lab[i:i + k]))
            i += k
        return out


def equitable_partition(g: ColoredGraph, init: Sequence[int] | None = None) -> list[list[int]]:
    """Ordered equitable partition computed by the refinement kernel (cells as vertex lists)."""
    part, starts = _Partition.from_colors(g.colors if init is None else list(init))
    offsets, nbrs = g.csr
    _refine(offsets, nbrs, part.lab, part.pos, part.cell, part.size, starts)
    return part.cells()


_HEADER = struct.Struct(">I")


def encode(g: ColoredGraph, order: Sequence[int]) -> bytes:
    """Encoding of ``g`` relabeled so vertex ``order[i]`` becomes i.

    Layout: 4-byte big-endian vertex count, one byte per color in canonical
    order, 4-byte edge count, then the sorted relabeled (u, v) pairs with
    u < v as 4-byte big-endian integers.
    """
    order = np.asarray(order, dtype=np.int64)
    colors = np.asarray(g.colors, dtype=np.uint8)[order]
    return (_HEADER.pack(g.vertex_count) + colors.tobytes()
            + _HEADER.pack(len(g.edges)) + _edge_bytes(_edge_array(g), _inverse(order)))


def _inverse(order: np.ndarray) -> np.ndarray:
    inv = np.empty(len(order), dtype=np.int64)
    inv[order] = np.arange(len(order))
    return inv


def _edge_array(g: ColoredGraph) -> np.ndarray:
    return np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)


def _edge_bytes(edges: np.ndarray, pos: np.ndarray) -> bytes:
    e = pos[edges]
    e.sort(axis=1)
    e = e[np.lexsort((e[:, 1], e[:, 0]))]
    return e.astype(">u4").tobytes()


class _Search:
    def __init__(self, g: ColoredGraph):
        self.g = g
        self.offsets, self.nbrs = g.csr
        self.edges = _edge_array(g)
        self.best_code: bytes | None = None
        self.best_lab: np.ndarray | None = None
        self.first_code: bytes | None = None
        self.first_lab: np.ndarray | None = None
        self.gens: list[np.ndarray] = []
        self.leaves = 0

    def run(self) -> CanonicalCertificate:
        part, starts = _Partition.from_colors(self.g.colors)
        _refine(self.offsets, self.nbrs, part.lab, part.pos, part.cell, part.size, starts)
        self._dfs(part, [])
        order = tuple(int(v) for v in self.best_lab)
        colors = bytes(self.g.colors[v] for v in order)
        enc = (_HEADER.pack(self.g.vertex_count) + colors
               + _HEADER.pack(len(self.g.edges)) + self.best_code)
        return CanonicalCertificate(order, enc, self.leaves)

    def _leaf(self, part: _Partition) -> None:
        self.leaves += 1
        code = _edge_bytes(self.edges, part.pos.astype(np.int64))
        lab = part.lab
        if self.first_code is None:
            self.first_code, self.first_lab = code, lab.copy()
            self.best_code, self.best_lab = code, lab.copy()
            return
        for ref_code, ref_lab in ((self.first_code, self.first_lab), (self.best_code, self.best_lab)):
            if code == ref_code:
                gamma = np.empty(len(lab), dtype=np.int32)
                gamma[lab] = ref_lab
                if not np.array_equal(gamma, np.arange(len(lab))):
                    self.gens.append(gamma)
                return
        if code < self.best_code:
            self.best_code, self.best_lab = code, lab.copy()

    def _orbits(self, fixed: list[int]) -> np.ndarray:
        """Orbit representatives (minimal vertex) under the generators fixing ``fixed``."""
        gens = [gm for gm in self.gens if not fixed or np.array_equal(gm[fixed], fixed)]
        rep = np.arange(self.g.vertex_count)
        while True:
            old = rep
            for gm in gens:
                rep = np.minimum(rep, rep[gm])
                np.minimum.at(rep, gm, rep.copy())
            rep = rep[rep]
            if np.array_equal(rep, old):
                return rep

    def _dfs(self, part: _Partition, fixed: list[int]) -> None:
        s = part.target_cell()
        if s < 0:
            self._leaf(part)
            return
        k = int(part.size[s])
        candidates = sorted(int(v) for v in part.lab[s:s + k])
        done: list[int] = []
        seen_gens = 0
        orbit = None
        for v in candidates:
            if done and len(self.gens) > 0:
                if orbit is None or seen_gens != len(self.gens):
                    orbit = self._orbits(fixed)
                    seen_gens = len(self.gens)
                if any(orbit[v] == orbit[u] for u in done):
                    continue
            child = part.copy()
            start = child.individualize(v)
            _refine(self.offsets, self.nbrs, child.lab, child.pos, child.cell, child.size, [start])
            self._dfs(child, fixed + [v])
            done.append(v)


def canonical_form(g: ColoredGraph) -> CanonicalCertificate:
    """Canonical labeling and byte encoding; equal encodings iff isomorphic graphs."""
    if g.vertex_count == 0:
        return CanonicalCertificate((), _HEADER.pack(0) + _HEADER.pack(0), 1)
    return _Search(g).run()


def find_isomorphism(g1: ColoredGraph, g2: ColoredGraph,
                     cert1: CanonicalCertificate | None = None,
                     cert2: CanonicalCertificate | None = None) -> list[int] | None:
    """A color- and edge-preserving bijection g1 -> g2, or None.

    Certificates may be passed in when already computed.
    """
    if g1.vertex_count != g2.vertex_count or len(g1.edges) != len(g2.edges):
        return None
    if sorted(g1.colors) != sorted(g2.colors):
        return None
    c1 = cert1 or canonical_form(g1)
    c2 = cert2 or canonical_form(g2)
    if c1.encoding != c2.encoding:
        return None
    mapping = [0] * g1.vertex_count
    for v1, v2 in zip(c1.order, c2.order):
        mapping[v1] = v2
    if not g1.is_isomorphism(g2, mapping):
        raise AssertionError("equal canonical encodings but the induced map is not an isomorphism")
    return mapping
