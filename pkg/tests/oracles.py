"""Independent reference computations used only by the tests.

Nothing here calls the enumeration, canonization or generator-enumeration
code under test; the oracles work from whole-group searches instead.
"""
import itertools


def is_subgroup(g, elems):
    s = set(elems)
    return g.identity in s and all(g.table[a][b] in s for a in s for b in s)


def all_subgroups(g):
    """Every subgroup, by brute-force subset search (n <= 10) or by
    repeatedly closing known subgroups under one extra element."""
    n = g.n
    if n <= 10:
        others = [x for x in range(n) if x != g.identity]
        subs = set()
        for r in range(len(others) + 1):
            for extra in itertools.combinations(others, r):
                cand = frozenset((g.identity,) + extra)
                if is_subgroup(g, cand):
                    subs.add(cand)
        return subs

    def close(elems):
        s = set(elems)
        while True:
            new = {g.table[a][b] for a in s for b in s} - s
            if not new:
                return frozenset(s)
            s |= new

    subs = {frozenset([g.identity])}
    frontier = list(subs)
    while frontier:
        nxt = []
        for h in frontier:
            for x in range(n):
                if x not in h:
                    k = close(h | {x})
                    if k not in subs:
                        subs.add(k)
                        nxt.append(k)
        frontier = nxt
    return subs


def _prime(k):
    return k >= 2 and all(k % d for d in range(2, int(k ** 0.5) + 1))


def _normal_in(g, lo, hi):
    inv = [row.index(g.identity) for row in g.table]
    return all(g.table[g.table[x][a]][inv[x]] in lo for x in hi for a in lo)


def composition_series_oracle(g):
    """All towers of subgroups with prime indices and each step normal in the next."""
    subs = sorted(all_subgroups(g), key=len)
    whole = frozenset(range(g.n))
    out = []

    def grow(chain):
        top = chain[-1]
        if top == whole:
            out.append(tuple(tuple(sorted(level)) for level in chain))
            return
        for k in subs:
            if top < k and len(k) % len(top) == 0 and _prime(len(k) // len(top)) and _normal_in(g, top, k):
                grow(chain + [k])

    grow([frozenset([g.identity])])
    return sorted(out)


def iter_isomorphisms(g, h, allowed=None):
    """Every isomorphism g -> h, optionally restricting images: ``allowed[x]``
    is the set of permitted images of x. Plain backtracking in element order
    with a consistency check against all earlier assignments."""
    if g.n != h.n:
        return
    n = g.n
    order = list(range(n))
    gt, ht = g.table, h.table

    def ok(f, x):
        for y in range(n):
            if f[y] < 0:
                continue
            for a, b in ((x, y), (y, x)):
                z = gt[a][b]
                if f[z] >= 0 and f[z] != ht[f[a]][f[b]]:
                    return False
        return True

    def rec(i, f, used):
        if i == n:
            yield tuple(f)
            return
        x = order[i]
        for y in range(n):
            if used[y] or (allowed is not None and y not in allowed[x]):
                continue
            f[x] = y
            used[y] = True
            if ok(f, x):
                yield from rec(i + 1, f, used)
            f[x] = -1
            used[y] = False

    yield from rec(0, [-1] * n, [False] * n)


def level_of(chain, x):
    return next(i for i, level in enumerate(chain) if x in level)


def series_iso_oracle(s, s2):
    """Some isomorphism mapping every level of s onto the matching level of s2."""
    if s.group.n != s2.group.n or len(s.chain) != len(s2.chain):
        return None
    lv2 = {}
    for y in range(s2.group.n):
        lv2.setdefault(level_of(s2.chain, y), set()).add(y)
    allowed = [lv2.get(level_of(s.chain, x), set()) for x in range(s.group.n)]
    return next(iter_isomorphisms(s.group, s2.group, allowed), None)


def count_involutions(g):
    return sum(1 for x in range(g.n) if x != g.identity and g.table[x][x] == g.identity)
