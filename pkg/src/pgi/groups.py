"""Finite groups given by multiplication tables.

Element ids are 0-based in memory (0..n-1); the text file format and CLI use
1-based ids. ``validate_group`` takes the 1-based raw table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import MalformedTable, NoIdentity, NotAssociative, NotLatin, NotNested

__all__ = [
    "GroupTable",
    "GroupProfile",
    "Subgroup",
    "IsoMap",
    "validate_group",
    "profile",
    "subgroup_generated",
    "left_cosets",
    "is_normal",
    "rank",
    "minimal_generating_sequence",
    "brute_force_iso",
    "element_orders",
    "read_group",
    "write_group",
    "parse_group",
    "format_group",
    "smallest_prime_factor",
]


@dataclass(frozen=True)
class GroupTable:
    n: int
    table: tuple[tuple[int, ...], ...]
    identity: int

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64).reshape(self.n, self.n)

    def to_rows(self) -> list[list[int]]:
        """The table with 1-based ids, as in the file format."""
        return [[x + 1 for x in row] for row in self.table]

    def dumps(self) -> str:
        return format_group(self)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"GroupTable(n={self.n}, identity={self.identity + 1})"


@dataclass(frozen=True)
class GroupProfile:
    order: int
    smallest_prime: int
    is_p_group: bool
    prime_power_exponent: int | None


@dataclass(frozen=True)
class Subgroup:
    elements: tuple[int, ...]
    group: GroupTable = field(compare=False, repr=False, hash=False)

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class IsoMap:
    """An isomorphism G -> H; ``forward[x]`` is the image of x."""

    forward: tuple[int, ...]

    @property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.forward)
        for x, y in enumerate(self.forward):
            inv[y] = x
        return tuple(inv)

    def __call__(self, x: int) -> int:
        return self.forward[x]

    def is_isomorphism(self, g: GroupTable, h: GroupTable) -> bool:
        f = self.forward
        if g.n != h.n or len(f) != g.n or sorted(f) != list(range(h.n)):
            return False
        gt, ht = g.table, h.table
        return all(f[gt[x][y]] == ht[f[x]][f[y]] for x in range(g.n) for y in range(g.n))


def validate_group(raw: Sequence[Sequence[int]]) -> GroupTable:
    """Check the group axioms on a 1-based raw table and return a GroupTable.

    Raises the error for the first violated axiom, checked in the order
    shape, Latin property, identity, associativity.
    """
    n = len(raw)
    if n == 0:
        raise MalformedTable("empty table")
    rows = []
    for i, r in enumerate(raw):
        r = list(r)
        if len(r) != n:
            raise MalformedTable(f"row {i + 1} has {len(r)} entries, expected {n}")
        for x in r:
            if isinstance(x, bool) or int(x) != x or not 1 <= x <= n:
                raise MalformedTable(f"entry {x!r} in row {i + 1} is not in 1..{n}")
        rows.append([int(x) - 1 for x in r])
    full = set(range(n))
    for i, r in enumerate(rows):
        if set(r) != full:
            raise NotLatin(f"row {i + 1} repeats an element")
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotLatin(f"column {j + 1} repeats an element")
    ident = [e for e in range(n)
             if all(rows[e][x] == x and rows[x][e] == x for x in range(n))]
    if len(ident) != 1:
        raise NoIdentity("no two-sided identity element")
    t = np.asarray(rows, dtype=np.int64)
    # (ab)c vs a(bc), one slab of a at a time to bound memory
    for a in range(n):
        left = t[t[a]]          # left[b, c] = (a*b)*c
        right = t[a][t]         # right[b, c] = a*(b*c)
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = bad[0]
            raise NotAssociative((a + 1, int(b) + 1, int(c) + 1))
    # inverses follow from the above; assert anyway
    e = ident[0]
    if any(e not in r for r in rows):
        raise NoIdentity("element without inverse")
    return GroupTable(n, tuple(tuple(r) for r in rows), e)


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def profile(g: GroupTable) -> GroupProfile:
    n = g.n
    if n == 1:
        # the trivial group is a p-group for every p; report p=1, length 0
        return GroupProfile(1, 1, True, 0)
    p = smallest_prime_factor(n)
    m, rest = 0, n
    while rest % p == 0:
        rest //= p
        m += 1
    if rest == 1:
        return GroupProfile(n, p, True, m)
    return GroupProfile(n, p, False, None)


def _closure(g: GroupTable, seed: Iterable[int], base: Iterable[int] = ()) -> frozenset[int]:
    t = g.table
    gens = [x for x in dict.fromkeys([*base, *seed]) if x != g.identity]
    elems = {g.identity}
    work = [g.identity]
    # right multiplication by generators reaches every product in a finite group
    while work:
        x = work.pop()
        row = t[x]
        for s in gens:
            y = row[s]
            if y not in elems:
                elems.add(y)
                work.append(y)
    return frozenset(elems)


def subgroup_generated(g: GroupTable, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    return Subgroup(tuple(sorted(_closure(g, seed))), g)


def left_cosets(g: GroupTable, h: Subgroup | Iterable[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Left cosets xH as (minimal representative, sorted elements), ordered by representative."""
    hs = tuple(h)
    seen = [False] * g.n
    out = []
    t = g.table
    for x in range(g.n):
        if seen[x]:
            continue
        coset = sorted(t[x][k] for k in hs)
        for y in coset:
            seen[y] = True
        out.append((x, tuple(coset)))
    return out


def is_normal(g: GroupTable, inner: Subgroup | Iterable[int], outer: Subgroup | Iterable[int]) -> bool:
    inner_set = frozenset(inner)
    outer_set = frozenset(outer)
    if not inner_set <= outer_set:
        raise NotNested("inner subgroup is not contained in outer subgroup")
    t, inv = g.table, g.inverses
    return all(t[t[x][a]][inv[x]] in inner_set for x in outer_set for a in inner_set)


def element_orders(g: GroupTable) -> tuple[int, ...]:
    orders = []
    for x in range(g.n):
        k, y = 1, x
        while y != g.identity:
            y = g.table[y][x]
            k += 1
        orders.append(k)
    return tuple(orders)


def minimal_generating_sequence(g: GroupTable) -> tuple[int, ...]:
    """A smallest generating set, lexicographically first among increasing sequences."""
    if g.n == 1:
        return ()
    candidates = [x for x in range(g.n) if x != g.identity]
    for k in range(1, g.n):
        found = _search_generators(g, candidates, k, 0, (), frozenset([g.identity]))
        if found is not None:
            return found
    raise AssertionError("unreachable: the whole group generates itself")


def _search_generators(g, candidates, k, start, chosen, sub):
    if len(sub) == g.n:
        return chosen if len(chosen) == k else None
    if len(chosen) == k:
        return None
    for i in range(start, len(candidates)):
        x = candidates[i]
        if x in sub:
            # redundant generator; a smaller sequence would already have been found
            continue
        found = _search_generators(g, candidates, k, i + 1, chosen + (x,), _closure(g, (x,), sub))
        if found is not None:
            return found
    return None


def rank(g: GroupTable) -> int:
    """Size of a smallest generating set (0 for the trivial group)."""
    return len(minimal_generating_sequence(g))


def brute_force_iso(g: GroupTable, h: GroupTable) -> IsoMap | None:
    """Exhaustive search for an isomorphism, used as an independent oracle.

    Elements of ``g`` are assigned images one at a time (candidates restricted
    to elements of equal order); after each choice the partial map is closed
    under products and abandoned on any conflict.
    """
    if g.n != h.n:
        return None
    n = g.n
    og, oh = element_orders(g), element_orders(h)
    if sorted(og) != sorted(oh):
        return None
    gt, ht = g.table, h.table
    by_order: dict[int, list[int]] = {}
    for y in range(n):
        by_order.setdefault(oh[y], []).append(y)

    def close(fwd, used, assigned):
        # assigned: list of domain elements with images; extend to products
        i = 0
        while i < len(assigned):
            a = assigned[i]
            for j in range(i + 1):
                b = assigned[j]
                for x, y in ((a, b), (b, a)):
                    z = gt[x][y]
                    w = ht[fwd[x]][fwd[y]]
                    if fwd[z] == -1:
                        if used[w] or og[z] != oh[w]:
                            return False
                        fwd[z] = w
                        used[w] = True
                        assigned.append(z)
                    elif fwd[z] != w:
                        return False
            i += 1
        return True

    def search(fwd, used, assigned):
        try:
            x = fwd.index(-1)
        except ValueError:
            return tuple(fwd)
        for y in by_order[og[x]]:
            if used[y]:
                continue
            f2, u2, a2 = fwd[:], used[:], assigned[:]
            f2[x] = y
            u2[y] = True
            a2.append(x)
            if close(f2, u2, a2):
                res = search(f2, u2, a2)
                if res is not None:
                    return res
        return None

    fwd = [-1] * n
    used = [False] * n
    fwd[g.identity] = h.identity
    used[h.identity] = True
    res = search(fwd, used, [g.identity])
    if res is None:
        return None
    iso = IsoMap(res)
    assert iso.is_isomorphism(g, h)
    return iso


# --- text format -----------------------------------------------------------

def parse_group(text: str) -> GroupTable:
    """Parse the group file format: '#' comments, then n, then n rows."""
    lines = [ln.strip() for ln in text.splitlines()]
    data = [ln for ln in lines if ln and not ln.startswith("#")]
    if not data:
        raise MalformedTable("no data lines")
    try:
        n = int(data[0])
        rows = [[int(tok) for tok in ln.split()] for ln in data[1:]]
    except ValueError as exc:
        raise MalformedTable(f"non-integer token: {exc}") from None
    if n < 1 or len(rows) != n:
        raise MalformedTable(f"expected {n} table rows, found {len(rows)}")
    return validate_group(rows)


def format_group(g: GroupTable, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(str(g.n))
    out.extend(" ".join(str(x + 1) for x in row) for row in g.table)
    return "\n".join(out) + "\n"


def read_group(path) -> GroupTable:
    with open(path) as fh:
        return parse_group(fh.read())


def write_group(g: GroupTable, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w") as fh:
        fh.write(format_group(g, comments))
