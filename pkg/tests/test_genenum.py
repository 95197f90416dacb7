import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pgi.driver import relabel
from pgi.errors import NotGenerating
from pgi.genenum import canonical_table, gen_enum_canon, gen_enum_iso, standard_order_key, word_ranks
from pgi.groups import brute_force_iso, minimal_generating_sequence

from conftest import CORPUS, cyclic, elem_ab, random_perm, shuffled

ADD4 = ((0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2))


def test_word_ranks_c4():
    wr = word_ranks(cyclic(4), (1,))
    assert wr.order == (0, 1, 2, 3)
    assert wr.words == ((), (0,), (0, 0), (0, 0, 0))


def test_word_ranks_klein():
    # (0,1) = 1 and (1,0) = 2; their product is 3
    wr = word_ranks(elem_ab(2, 2), (1, 2))
    assert wr.order == (0, 1, 2, 3)
    assert wr.words == ((), (0,), (1,), (0, 1))


def test_words_are_least():
    g = CORPUS["D4"]
    gens = minimal_generating_sequence(g)
    wr = word_ranks(g, gens)
    keys = [standard_order_key(wr.words[x]) for x in wr.order]
    assert keys == sorted(keys)
    # brute force: every shorter-or-smaller word evaluates to a different element
    for x in range(g.n):
        w = wr.words[x]
        for length in range(len(w) + 1):
            for cand in itertools.product(range(len(gens)), repeat=length):
                if standard_order_key(cand) >= standard_order_key(w):
                    break
                val = g.identity
                for i in cand:
                    val = g.table[val][gens[i]]
                assert val != x


@pytest.mark.parametrize("gen", [1, 3])
def test_canonical_table_c4(gen):
    assert canonical_table(cyclic(4), (gen,)).table == ADD4


def test_not_generating():
    with pytest.raises(NotGenerating):
        word_ranks(cyclic(4), (2,))


def test_repeated_generator():
    with pytest.raises(ValueError):
        word_ranks(cyclic(4), (1, 1))


@pytest.mark.parametrize("n", [4, 8, 12, 16])
def test_gen_enum_iso_matches_brute_force(n):
    same = [g for g in CORPUS.values() if g.n == n]
    for g, h in itertools.product(same, repeat=2):
        phi = gen_enum_iso(g, h)
        assert (phi is None) == (brute_force_iso(g, h) is None)
        if phi is not None:
            assert phi.is_isomorphism(g, h)


def test_gen_enum_canon_distinguishes_order_8():
    names = ["C8", "C2xC4", "C2^3", "D4", "Q8"]
    tables = {gen_enum_canon(CORPUS[k]).table for k in names}
    assert len(tables) == 5


@pytest.mark.parametrize("name", ["Klein", "D3", "D4", "Q8", "A4", "C3^2"])
def test_gen_enum_canon_invariant(name, rng):
    g = CORPUS[name]
    c = gen_enum_canon(g)
    assert c.identity == 0
    assert brute_force_iso(g, c) is not None
    for _ in range(3):
        assert gen_enum_canon(shuffled(g, rng)) == c


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C6", "D3", "D4", "Q8", "C2xC4", "A4"]), st.randoms(use_true_random=False))
def test_transport(name, rnd):
    # renaming elements renames the word order and leaves M_g unchanged
    g = CORPUS[name]
    perm = random_perm(g.n, rnd)
    h = relabel(g, perm)
    gens = minimal_generating_sequence(g)
    moved = tuple(perm[x] for x in gens)
    assert word_ranks(h, moved).order == tuple(perm[x] for x in word_ranks(g, gens).order)
    assert canonical_table(h, moved) == canonical_table(g, gens)
