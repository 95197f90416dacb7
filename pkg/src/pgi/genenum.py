"""Generator enumeration: isomorphism by extending maps on a generating set, and
canonization by ordering elements along minimal words in the generators."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import NotGenerating
from .groups import GroupTable, IsoMap, element_orders, minimal_generating_sequence

__all__ = [
    "WordRank",
    "word_ranks",
    "canonical_table",
    "gen_enum_iso",
    "gen_enum_canon",
    "standard_order_key",
]


@dataclass(frozen=True)
class WordRank:
    """Minimal words for every element under an ordered generating sequence.

    ``order`` lists elements from smallest to largest word; ``rank[x]`` is the
    position of x in it; ``words[x]`` is its word as generator indices;
    ``via[x]`` is ``(prefix element, generator index)`` (``None`` for the identity).
    """

    gens: tuple[int, ...]
    order: tuple[int, ...]
    rank: tuple[int, ...]
    words: tuple[tuple[int, ...], ...]
    via: tuple[tuple[int, int] | None, ...]


def standard_order_key(word: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Shorter words first, equal lengths lexicographically."""
    return (len(word), tuple(word))


def _bfs(g: GroupTable, gens: Sequence[int]):
    # layer by layer; scanning the previous layer in rank order and the
    # generators in index order finds each element's least word first
    t = g.table
    order = [g.identity]
    via: list[tuple[int, int] | None] = [None] * g.n
    seen = [False] * g.n
    seen[g.identity] = True
    layer_start = 0
    while layer_start < len(order):
        layer_end = len(order)
        for idx in range(layer_start, layer_end):
            y = order[idx]
            row = t[y]
            for i, s in enumerate(gens):
                x = row[s]
                if not seen[x]:
                    seen[x] = True
                    via[x] = (y, i)
                    order.append(x)
        layer_start = layer_end
    return order, via


def word_ranks(g: GroupTable, gens: Sequence[int]) -> WordRank:
    gens = tuple(gens)
    if len(set(gens)) != len(gens):
        raise ValueError("generating sequence repeats an element")
    order, via = _bfs(g, gens)
    if len(order) != g.n:
        raise NotGenerating(f"generators reach {len(order)} of {g.n} elements")
    words: list[tuple[int, ...]] = [()] * g.n
    for x in order[1:]:
        y, i = via[x]
        words[x] = words[y] + (i,)
    rank = [0] * g.n
    for r, x in enumerate(order):
        rank[x] = r
    return WordRank(gens, tuple(order), tuple(rank), tuple(words), tuple(via))


def _relabeled(g: GroupTable, order: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    rank = [0] * g.n
    for r, x in enumerate(order):
        rank[x] = r
    t = g.table
    return tuple(tuple(rank[t[x][y]] for y in order) for x in order)


def canonical_table(g: GroupTable, gens: Sequence[int]) -> GroupTable:
    """M_g: the table with every element renamed to its rank under the word order."""
    wr = word_ranks(g, gens)
    rows = _relabeled(g, wr.order)
    # rank 0 is always the identity (the empty word)
    return GroupTable(g.n, rows, 0)


def gen_enum_iso(g: GroupTable, h: GroupTable) -> IsoMap | None:
    """Try every image in ``h`` of a minimal generating sequence of ``g``."""
    if g.n != h.n:
        return None
    gens = minimal_generating_sequence(g)
    wr = word_ranks(g, gens)
    og, oh = element_orders(g), element_orders(h)
    if sorted(og) != sorted(oh):
        return None
    choices = [[y for y in range(h.n) if oh[y] == og[x]] for x in gens]
    ht = h.table
    for images in itertools.product(*choices):
        if len(set(images)) != len(images):
            continue
        f = [-1] * g.n
        f[g.identity] = h.identity
        used = {h.identity}
        ok = True
        for x in wr.order[1:]:
            y, i = wr.via[x]
            z = ht[f[y]][images[i]]
            if z in used:
                ok = False
                break
            used.add(z)
            f[x] = z
        if not ok:
            continue
        iso = IsoMap(tuple(f))
        if iso.is_isomorphism(g, h):
            return iso
    return None


def gen_enum_canon(g: GroupTable) -> GroupTable:
    """Least M_g, row-major, over all ordered generating sequences of length rank(g)."""
    r = len(minimal_generating_sequence(g))
    best = None
    for gens in itertools.permutations(range(g.n), r):
        order, _ = _bfs(g, gens)
        if len(order) != g.n:
            continue
        rows = _relabeled(g, order)
        if best is None or rows < best:
            best = rows
    return GroupTable(g.n, best, 0)
