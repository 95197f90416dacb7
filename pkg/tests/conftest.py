import itertools
import random

import pytest

from pgi.driver import FamilySpec, direct_product, generate_family, relabel
from pgi.groups import GroupTable, validate_group


def cyclic(n):
    return generate_family(FamilySpec("cyclic", n, 1))


def elem_ab(p, k):
    return generate_family(FamilySpec("elementary-abelian", p, k))


def dihedral(k):
    return generate_family(FamilySpec("dihedral", k=k))


def quaternion():
    return generate_family(FamilySpec("quaternion"))


def heisenberg(p):
    return generate_family(FamilySpec("heisenberg", p))


def alternating4():
    perms = sorted(p for p in itertools.permutations(range(4))
                   if sum(1 for i in range(4) for j in range(i) if p[j] > p[i]) % 2 == 0)
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(a[b[i]] for i in range(4))] + 1 for b in perms] for a in perms]
    return validate_group(rows)


def build_corpus():
    return {
        "C2": cyclic(2),
        "C3": cyclic(3),
        "C4": cyclic(4),
        "Klein": elem_ab(2, 2),
        "C6": cyclic(6),
        "D3": dihedral(3),
        "C8": cyclic(8),
        "C2xC4": direct_product(cyclic(2), cyclic(4)),
        "C2^3": elem_ab(2, 3),
        "D4": dihedral(4),
        "Q8": quaternion(),
        "C9": cyclic(9),
        "C3^2": elem_ab(3, 2),
        "C12": cyclic(12),
        "D6": dihedral(6),
        "A4": alternating4(),
        "C16": cyclic(16),
    }


CORPUS = build_corpus()


def random_perm(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def shuffled(g: GroupTable, rng: random.Random) -> GroupTable:
    return relabel(g, random_perm(g.n, rng))


# criterion number -> result line, filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(ACCEPTANCE_RESULTS[k])


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture
def rng():
    return random.Random(20261016)
