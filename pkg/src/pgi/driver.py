"""Top-level isomorphism and canonization with dispatch between the two routes.

The series route fixes one composition series of the first group and looks
for an isomorphic series of the second (or, for canonization, takes the least
table over canonical forms of all series). The generator route uses
generator enumeration. Dispatch compares the smallest prime p with
log2(n) / log2(log2(n)).
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .errors import BadParameters, BadPermutation, NoCompositionSeries
from .gadget import build_X
from .genenum import gen_enum_canon, gen_enum_iso
from .graphcanon import canonical_form
from .groups import GroupProfile, GroupTable, IsoMap, profile, smallest_prime_factor, validate_group
from .seriescanon import canon_series, series_isomorphic
from .series import enumerate_composition_series

log = logging.getLogger(__name__)

Route = Literal["series", "genenum"]
SERIES: Route = "series"
GENENUM: Route = "genenum"

__all__ = [
    "RouteDecision",
    "FamilySpec",
    "decide_route",
    "iso",
    "canon",
    "generate_family",
    "relabel",
    "random_relabel",
    "FAMILIES",
]


@dataclass(frozen=True)
class RouteDecision:
    n: int
    p: int
    alpha: float
    chosen: Route
    forced: Route | None = None


def _normalize_route(route: str | None) -> Route | None:
    if route is None:
        return None
    aliases = {"series": SERIES, "gen": GENENUM, "genenum": GENENUM}
    try:
        return aliases[route]
    except KeyError:
        raise BadParameters(f"unknown route {route!r}; use 'series' or 'gen'") from None


def decide_route(prof: GroupProfile, force: str | None = None) -> RouteDecision:
    """Series route iff p <= log2 n / log2 log2 n (ties to the series route)."""
    forced = _normalize_route(force)
    n, p = prof.order, prof.smallest_prime
    if n <= 2:
        # log2 log2 n <= 0: the ratio is unbounded, so p never exceeds it
        alpha = math.inf
    else:
        alpha = math.log2(n) / math.log2(math.log2(n))
    chosen = forced or (SERIES if p <= alpha else GENENUM)
    log.info("route: n=%d p=%d alpha=%.4f chosen=%s%s", n, p, alpha, chosen,
             " (forced)" if forced else "")
    return RouteDecision(n, p, alpha, chosen, forced)


def _route_for(g: GroupTable, force: str | None) -> Route:
    decision = decide_route(profile(g), force)
    return decision.chosen


def _series_or_raise(g: GroupTable):
    series = enumerate_composition_series(g)
    if not series:
        raise NoCompositionSeries("group has no composition series with prime-order factors")
    return series


def iso(g: GroupTable, h: GroupTable, force: str | None = None) -> IsoMap | None:
    """An isomorphism g -> h, or None. Every returned map is verified."""
    if g.n != h.n:
        return None
    if g.n == 1:
        return IsoMap((0,))
    route = _route_for(g, force)
    if route == SERIES and force is None and not enumerate_composition_series(g):
        log.info("no prime-factor composition series; falling back to generator enumeration")
        route = GENENUM
    if route == GENENUM:
        result = gen_enum_iso(g, h)
    else:
        s = _series_or_raise(g)[0]
        others = enumerate_composition_series(h)
        x1 = build_X(s)
        cert1 = canonical_form(x1)
        result = None
        for s2 in others:
            if s2.length != s.length:
                continue
            found = series_isomorphic(s, s2, cert1=cert1, x1=x1)
            if found is not None:
                result = found.phi
                break
    if result is not None:
        assert result.is_isomorphism(g, h)
    return result


def canon(g: GroupTable, force: str | None = None) -> GroupTable:
    """Canonical multiplication table; isomorphic inputs give identical tables per route."""
    if g.n == 1:
        return GroupTable(1, ((0,),), 0)
    route = _route_for(g, force)
    if route == SERIES and force is None and not enumerate_composition_series(g):
        route = GENENUM
    if route == GENENUM:
        return gen_enum_canon(g)
    tables = [canon_series(s).group_table for s in _series_or_raise(g)]
    return min(tables, key=lambda t: t.table)


# --- families ----------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """Which group to build.

    cyclic: order p**k (any p >= 2); elementary-abelian: (Z_p)^k;
    dihedral: symmetries of the k-gon (order 2k); quaternion: generalized
    quaternion of order 2**k (k >= 3, default 3); heisenberg: unitriangular
    3x3 matrices over Z_p; direct-product: the factors, left to right.
    """

    family: str
    p: int | None = None
    k: int | None = None
    factors: tuple["FamilySpec", ...] = field(default=())


FAMILIES = ("cyclic", "elementary-abelian", "dihedral", "quaternion", "heisenberg", "direct-product")


def _from_elements(elements: Sequence, mul, identity) -> GroupTable:
    index = {e: i for i, e in enumerate(elements)}
    rows = [[index[mul(a, b)] + 1 for b in elements] for a in elements]
    g = validate_group(rows)
    assert g.identity == index[identity]
    return g


def _require_prime(p, what):
    if p is None or p < 2 or smallest_prime_factor(p) != p:
        raise BadParameters(f"{what} needs a prime p, got {p}")


def generate_family(spec: FamilySpec) -> GroupTable:
    fam, p, k = spec.family, spec.p, spec.k
    if fam == "cyclic":
        # elements are the powers g^0, g^1, ...
        if p is None or p < 1:
            raise BadParameters("cyclic needs p >= 1")
        n = p ** (1 if k is None else k)
        if k is not None and k < 0:
            raise BadParameters("cyclic needs k >= 0")
        return _from_elements(range(n), lambda a, b: (a + b) % n, 0)
    if fam == "elementary-abelian":
        _require_prime(p, fam)
        if k is None or k < 0:
            raise BadParameters("elementary-abelian needs k >= 0")
        vecs = list(itertools.product(range(p), repeat=k))
        return _from_elements(vecs, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), (0,) * k)
    if fam == "dihedral":
        # (s, i) stands for r^i s^s: rotations first, then reflections
        d = k if k is not None else p
        if d is None or d < 1:
            raise BadParameters("dihedral needs the polygon size k >= 1")
        elems = [(0, i) for i in range(d)] + [(1, i) for i in range(d)]

        def mul(a, b):
            s1, i1 = a
            s2, i2 = b
            return ((s1 + s2) % 2, (i1 + (-i2 if s1 else i2)) % d)
        return _from_elements(elems, mul, (0, 0))
    if fam == "quaternion":
        e = 3 if k is None else k
        if e < 3:
            raise BadParameters("quaternion needs k >= 3 (order 2**k)")
        if e == 3:
            return _quaternion8()
        half = 2 ** (e - 1)
        # a^i b^j with a^half = 1, b^2 = a^(half/2), b a b^-1 = a^-1
        elems = [(j, i) for j in range(2) for i in range(half)]

        def qmul(x, y):
            j1, i1 = x
            j2, i2 = y
            i = i1 + (-i2 if j1 else i2)
            if j1 and j2:
                i += half // 2
            return ((j1 + j2) % 2, i % half)
        return _from_elements(elems, qmul, (0, 0))
    if fam == "heisenberg":
        _require_prime(p, fam)
        # (a, c, b) is [[1, a, c], [0, 1, b], [0, 0, 1]]: upper entries in row-major order
        elems = list(itertools.product(range(p), repeat=3))

        def hmul(x, y):
            a1, c1, b1 = x
            a2, c2, b2 = y
            return ((a1 + a2) % p, (c1 + c2 + a1 * b2) % p, (b1 + b2) % p)
        return _from_elements(elems, hmul, (0, 0, 0))
    if fam == "direct-product":
        if not spec.factors:
            raise BadParameters("direct-product needs at least one factor")
        g = generate_family(spec.factors[0])
        for f in spec.factors[1:]:
            g = direct_product(g, generate_family(f))
        return g
    raise BadParameters(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")


def _quaternion8() -> GroupTable:
    # order: 1, -1, i, -i, j, -j, k, -k
    names = ["1", "i", "j", "k"]
    unit = {("1", x): (1, x) for x in names}
    unit.update({(x, "1"): (1, x) for x in names})
    unit.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, x) for x in names for s in (1, -1)]

    def mul(a, b):
        sign, x = unit[(a[1], b[1])]
        return (a[0] * b[0] * sign, x)
    return _from_elements(elems, mul, (1, "1"))


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """G x H with elements numbered by lexicographic pairs."""
    pairs = list(itertools.product(range(g.n), range(h.n)))
    index = {pr: i for i, pr in enumerate(pairs)}
    table = tuple(tuple(index[(g.table[a][c], h.table[b][d])] for c, d in pairs) for a, b in pairs)
    return GroupTable(len(pairs), table, index[(g.identity, h.identity)])


def relabel(g: GroupTable, perm: Sequence[int]) -> GroupTable:
    """Copy of g with element a renamed perm[a]."""
    perm = list(perm)
    if sorted(perm) != list(range(g.n)):
        raise BadPermutation(f"not a permutation of 0..{g.n - 1}")
    rows = [[0] * g.n for _ in range(g.n)]
    for a in range(g.n):
        for b in range(g.n):
            rows[perm[a]][perm[b]] = perm[g.table[a][b]]
    return GroupTable(g.n, tuple(map(tuple, rows)), perm[g.identity])


def random_relabel(g: GroupTable, rng: random.Random) -> tuple[GroupTable, list[int]]:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm), perm
