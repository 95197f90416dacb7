"""Composition series: enumeration by chain extension, plus the chain-count bound."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .groups import GroupTable, _closure, is_normal, left_cosets, smallest_prime_factor

__all__ = [
    "CompositionSeries",
    "enumerate_composition_series",
    "count_extension_paths",
    "candidate_chain_bound",
    "validate_series",
    "format_series",
]


@dataclass(frozen=True)
class CompositionSeries:
    """A chain 1 = G_0 < G_1 < ... < G_m = G; each level is a sorted element tuple."""

    group: GroupTable = field(compare=False, repr=False)
    chain: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    def key(self) -> tuple[tuple[int, ...], ...]:
        return self.chain


def _is_prime(k: int) -> bool:
    return k >= 2 and smallest_prime_factor(k) == k


def _extensions(g: GroupTable, head: frozenset[int]) -> dict[frozenset[int], int]:
    """Prime-index normal extensions of ``head``, with how many coset reps produce each."""
    out: dict[frozenset[int], int] = {}
    for rep, _ in left_cosets(g, sorted(head)):
        if rep in head:
            continue
        k = _closure(g, (rep,), head)
        if k in out:
            out[k] += 1
            continue
        if _is_prime(len(k) // len(head)) and is_normal(g, head, k):
            out[k] = 1
    return out


def _tails(g: GroupTable, memo: dict, head: frozenset[int]):
    """All chains from ``head`` up to G as (levels above head, raw path count)."""
    if head in memo:
        return memo[head]
    if len(head) == g.n:
        res = [((), 1)]
    else:
        res = []
        for k, mult in _extensions(g, head).items():
            level = tuple(sorted(k))
            for rest, paths in _tails(g, memo, k):
                res.append(((level,) + rest, mult * paths))
    memo[head] = res
    return res


def _explore(g: GroupTable):
    bottom = (g.identity,)
    return [((bottom,) + rest, paths) for rest, paths in _tails(g, {}, frozenset(bottom))]


def enumerate_composition_series(g: GroupTable) -> list[CompositionSeries]:
    """Every composition series of ``g``, duplicate-free, sorted by chain.

    Chains grow from the head G_k by ``<G_k, x>`` for each minimal coset
    representative x of a nontrivial coset of G_k; an extension is kept
    only when the index is prime and G_k is normal in it. Subtrees above a
    given subgroup are shared, so each distinct chain appears once.
    """
    chains = sorted(chain for chain, _ in _explore(g))
    return [CompositionSeries(g, chain) for chain in chains]


def count_extension_paths(g: GroupTable) -> int:
    """Number of complete chains the extension procedure visits before deduplication."""
    return sum(paths for _, paths in _explore(g))


def candidate_chain_bound(g: GroupTable | int) -> int:
    """Product over k < floor(log_p n) of n / p^k, p the smallest prime dividing n.

    Exact for prime-power n; otherwise each factor is floor(n / p^k).
    """
    n = g if isinstance(g, int) else g.n
    if n < 2:
        raise ValueError("bound is defined for n >= 2")
    p = smallest_prime_factor(n)
    top = 0
    while p ** (top + 1) <= n:
        top += 1
    prime_power = p ** top == n
    bound = Fraction(1)
    for k in range(top):
        bound *= Fraction(n, p ** k) if prime_power else n // p ** k
    assert bound.denominator == 1
    return int(bound)


def validate_series(s: CompositionSeries) -> list[str]:
    """Violated invariants of ``s`` (empty when valid)."""
    g, chain = s.group, s.chain
    problems = []
    if not chain or chain[0] != (g.identity,):
        problems.append("G_0 is not the trivial subgroup")
    if not chain or len(chain[-1]) != g.n:
        problems.append("G_m is not the whole group")
    for i, level in enumerate(chain):
        if tuple(sorted(set(level))) != level:
            problems.append(f"G_{i} is not a sorted element tuple")
        elif _closure(g, level) != frozenset(level):
            problems.append(f"G_{i} is not a subgroup")
    for i in range(len(chain) - 1):
        lo, hi = frozenset(chain[i]), frozenset(chain[i + 1])
        if not lo < hi:
            problems.append(f"G_{i} is not properly contained in G_{i + 1}")
            continue
        if len(hi) % len(lo) or not _is_prime(len(hi) // len(lo)):
            problems.append(f"index of G_{i} in G_{i + 1} is not prime")
        if not is_normal(g, lo, hi):
            problems.append(f"G_{i} is not normal in G_{i + 1}")
    return problems


def format_series(s: CompositionSeries) -> str:
    """``{1} < {1,3} < ... < G`` with 1-based element ids."""
    if s.length == 0:
        return "{" + str(s.group.identity + 1) + "}"
    parts = ["{" + ",".join(str(x + 1) for x in level) + "}" for level in s.chain[:-1]]
    parts.append("G")
    return " < ".join(parts)
