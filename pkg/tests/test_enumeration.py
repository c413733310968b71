import random

import pytest
from hypothesis import given, strategies as st

from latmeet.enumeration import (
    MAX_SIZE,
    SizeLimitExceeded,
    canonical_form,
    enumerate_lattices,
    lattices_of_size,
    naive_lattice_count,
    posets,
)
from latmeet.lattice import is_distributive, is_modular

# unlabelled lattices on n elements (OEIS A006966)
KNOWN_COUNTS = [1, 1, 1, 2, 5, 15, 53, 222]


@pytest.mark.parametrize("n", range(1, 9))
def test_counts(n):
    assert len(lattices_of_size(n)) == KNOWN_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_against_brute_force(n):
    assert naive_lattice_count(n) == len(lattices_of_size(n))


def test_poset_counts():
    # unlabelled posets (OEIS A000112)
    assert [len(posets(m)) for m in range(6)] == [1, 1, 2, 5, 16, 63]


def _permute(down, perm):
    where = {old: new for new, old in enumerate(perm)}
    out = [0] * len(down)
    for old, d in enumerate(down):
        mask = 0
        for a in range(len(down)):
            if d >> a & 1:
                mask |= 1 << where[a]
        out[where[old]] = mask
    return tuple(out)


@given(st.integers(0, 5).flatmap(lambda m: st.tuples(st.sampled_from(posets(m)), st.randoms())))
def test_canonical_form_is_relabelling_invariant(data):
    P, rnd = data
    perm = list(range(len(P)))
    rnd.shuffle(perm)
    assert canonical_form(_permute(P, perm)) == canonical_form(P)


def test_names_and_bounds():
    for L in lattices_of_size(5):
        assert L.name.startswith("L5_")
        assert L.elements[0] == "e0" and L.bottom == "e0" and L.top == "e4"


def test_only_five_element_modular_nondistributive_is_m3():
    found = [L for L in lattices_of_size(5) if is_modular(L) and not is_distributive(L)]
    assert len(found) == 1
    M3 = found[0]
    assert sorted(len(M3.interval(M3.bottom, e)) for e in M3.elements) == [1, 2, 2, 2, 5]


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        lattices_of_size(MAX_SIZE + 1)
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_lattices(MAX_SIZE + 1))
    assert lattices_of_size(0) == []


def test_enumeration_is_deterministic():
    a = [sorted(L.covers) for L in lattices_of_size(6)]
    random.seed(3)
    b = [sorted(L.covers) for L in lattices_of_size(6)]
    assert a == b
