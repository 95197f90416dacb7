import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from pgi.errors import MalformedTable, NoIdentity, NotAssociative, NotLatin, NotNested
from pgi.groups import (
    IsoMap,
    brute_force_iso,
    format_group,
    is_normal,
    left_cosets,
    parse_group,
    profile,
    rank,
    subgroup_generated,
    validate_group,
)

from conftest import CORPUS, cyclic, dihedral, elem_ab, heisenberg, random_perm, shuffled
from pgi.driver import relabel

# order-5 loop with identity 1 found by exhaustive search over reduced Latin squares;
# (2*2)*3 = 1*3 = 3 but 2*(2*3) = 2*4 = 5
NONASSOC5 = [[1, 2, 3, 4, 5], [2, 1, 4, 5, 3], [3, 4, 5, 1, 2], [4, 5, 2, 3, 1], [5, 3, 1, 2, 4]]


class TestValidate:
    def test_trivial(self):
        g = validate_group([[1]])
        assert (g.n, g.identity) == (1, 0)

    def test_cyclic3(self):
        g = validate_group([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
        assert g.identity == 0

    def test_not_latin(self):
        with pytest.raises(NotLatin):
            validate_group([[1, 2], [2, 2]])

    def test_not_associative_reports_witness(self):
        with pytest.raises(NotAssociative) as info:
            validate_group(NONASSOC5)
        a, b, c = info.value.witness
        t = NONASSOC5
        assert t[t[a - 1][b - 1] - 1][c - 1] != t[a - 1][t[b - 1][c - 1] - 1]
        assert info.value.witness == (2, 2, 3)

    def test_no_identity(self):
        # Latin square x*y = x - y mod 3: no element is a two-sided identity
        rows = [[(x - y) % 3 + 1 for y in range(3)] for x in range(3)]
        with pytest.raises(NoIdentity):
            validate_group(rows)

    @pytest.mark.parametrize("raw", [[[1, 2]], [[1, 3], [2, 1]], [[0]], []])
    def test_malformed(self, raw):
        with pytest.raises(MalformedTable):
            validate_group(raw)

    def test_identity_not_assumed_first(self, rng):
        g = cyclic(5)
        perm = [3, 0, 1, 2, 4]
        h = relabel(g, perm)
        assert validate_group(h.to_rows()).identity == 3


class TestProfile:
    def test_cyclic8(self):
        p = profile(cyclic(8))
        assert (p.order, p.smallest_prime, p.is_p_group, p.prime_power_exponent) == (8, 2, True, 3)

    def test_cyclic12(self):
        p = profile(cyclic(12))
        assert (p.order, p.smallest_prime, p.is_p_group) == (12, 2, False)

    def test_heisenberg3(self):
        p = profile(heisenberg(3))
        assert (p.order, p.smallest_prime, p.is_p_group, p.prime_power_exponent) == (27, 3, True, 3)


class TestSubgroups:
    def test_generated_in_c6(self):
        # element k of cyclic(6) is g^k
        assert subgroup_generated(cyclic(6), {2}).elements == (0, 2, 4)

    def test_empty_seed(self):
        g = shuffled(cyclic(6), __import__("random").Random(1))
        assert subgroup_generated(g, set()).elements == (g.identity,)

    def test_generator_gives_whole_group(self):
        assert len(subgroup_generated(cyclic(4), {1})) == 4

    def test_cosets_c4(self):
        assert left_cosets(cyclic(4), (0, 2)) == [(0, (0, 2)), (1, (1, 3))]

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_trivial_and_whole_cosets(self, name):
        g = CORPUS[name]
        assert len(left_cosets(g, (g.identity,))) == g.n
        assert left_cosets(g, range(g.n)) == [(0, tuple(range(g.n)))]

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_lagrange_and_coset_partition(self, name):
        g = CORPUS[name]
        for x in range(g.n):
            h = subgroup_generated(g, {x})
            assert g.n % len(h) == 0
            cosets = left_cosets(g, h)
            assert sorted(y for _, c in cosets for y in c) == list(range(g.n))
            for rep, c in cosets:
                assert rep == min(c)
                assert tuple(sorted(g.table[rep][k] for k in h)) == c

    def test_normal_in_abelian(self):
        g = elem_ab(2, 3)
        for x in range(g.n):
            assert is_normal(g, subgroup_generated(g, {x}), range(g.n))

    def test_rotations_normal_in_d4(self):
        g = dihedral(4)
        rot = subgroup_generated(g, {1})
        assert len(rot) == 4 and is_normal(g, rot, range(g.n))

    def test_reflection_not_normal_in_d3(self):
        # ids 0..2 are rotations r^i, 3..5 reflections; r s r^-1 = r^2 s is not s
        g = dihedral(3)
        assert not is_normal(g, (0, 3), range(6))

    def test_not_nested(self):
        with pytest.raises(NotNested):
            is_normal(cyclic(4), (0, 2), (0, 1))


class TestRank:
    @pytest.mark.parametrize("n", [2, 3, 4, 7, 12, 16])
    def test_cyclic(self, n):
        assert rank(cyclic(n)) == 1

    def test_klein(self):
        assert rank(elem_ab(2, 2)) == 2

    def test_c2_cubed(self):
        assert rank(elem_ab(2, 3)) == 3

    def test_trivial(self):
        assert rank(cyclic(1)) == 0

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_log_bound(self, name):
        g = CORPUS[name]
        prof = profile(g)
        r = rank(g)
        assert r <= math.log2(g.n) + 1e-9
        if prof.is_p_group:
            assert r <= prof.prime_power_exponent


class TestBruteForceIso:
    def test_c4_vs_klein(self):
        assert brute_force_iso(cyclic(4), elem_ab(2, 2)) is None

    def test_c6_vs_d3(self):
        assert brute_force_iso(cyclic(6), dihedral(3)) is None

    def test_relabel_witness(self, rng):
        g = CORPUS["D4"]
        h = shuffled(g, rng)
        phi = brute_force_iso(g, h)
        assert phi is not None and phi.is_isomorphism(g, h)

    def test_symmetric_on_corpus(self):
        small = [g for g in CORPUS.values() if g.n <= 12]
        for g, h in itertools.combinations(small, 2):
            assert (brute_force_iso(g, h) is None) == (brute_force_iso(h, g) is None)

    def test_order_mismatch(self):
        assert brute_force_iso(cyclic(4), cyclic(5)) is None

    def test_isomap_rejects_non_hom(self):
        g = cyclic(4)
        assert not IsoMap((0, 2, 1, 3)).is_isomorphism(g, g)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(CORPUS)), st.randoms(use_true_random=False))
def test_relabel_is_isomorphic(name, rnd):
    g = CORPUS[name]
    perm = random_perm(g.n, rnd)
    h = relabel(g, perm)
    assert IsoMap(tuple(perm)).is_isomorphism(g, h)
    assert validate_group(h.to_rows()) == h


def test_file_format_roundtrip():
    g = CORPUS["Q8"]
    text = "# quaternion\n" + format_group(g)
    assert parse_group(text) == g
    assert format_group(parse_group(text)) == format_group(g)


def test_file_format_exact():
    assert format_group(cyclic(3)) == "3\n1 2 3\n2 3 1\n3 1 2\n"


def test_file_format_bad_row_count():
    with pytest.raises(MalformedTable):
        parse_group("3\n1 2 3\n2 3 1\n")
