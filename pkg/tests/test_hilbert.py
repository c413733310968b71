import pytest
from hypothesis import given, strategies as st

from latmeet.groebner import MonomialIdeal, buchberger, initial_ideal
from latmeet.hilbert import (
    HilbertSeries,
    hilbert_function,
    hilbert_series_gb,
    hilbert_series_ideal,
    hilbert_series_monomial,
    krull_dimension,
    multiplicity,
    numerator_degree,
)
from latmeet.joinmeet import join_meet_ideal
from latmeet.lattice import diamond, lk

from oracles import standard_count


def diamond_series(n):
    return HilbertSeries((1, n, n, 1), 2)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_diamond_series(n):
    P = join_meet_ideal(diamond(n))
    gb = buchberger(P.ideal)
    assert hilbert_series_ideal(P.ideal) == diamond_series(n)
    assert hilbert_series_monomial(initial_ideal(gb), P.ring.nvars) == diamond_series(n)


def test_pairwise_products_series():
    # (y_i y_j : i < j) in n variables: 1 + n t / (1 - t)
    for n in (3, 4, 5):
        gens = [tuple(int(k in (i, j)) for k in range(n)) for i in range(n) for j in range(i + 1, n)]
        H = hilbert_series_monomial(MonomialIdeal.of(n, gens))
        assert H == HilbertSeries((1, n - 1), 1)
        assert krull_dimension(H) == 1 and multiplicity(H) == n


def test_zero_and_principal():
    H = hilbert_series_monomial(MonomialIdeal.of(4, []))
    assert H == HilbertSeries((1,), 4)
    assert (krull_dimension(H), multiplicity(H), numerator_degree(H)) == (4, 1, 0)
    assert hilbert_series_monomial(MonomialIdeal.of(1, [(2,)])) == HilbertSeries((1, 1), 0)


def test_hilbert_function_of_d5():
    H = diamond_series(3)
    assert [hilbert_function(H, d) for d in range(3)] == [1, 5, 12]
    gb = buchberger(join_meet_ideal(diamond(3)).ideal)
    M = initial_ideal(gb)
    assert [standard_count(M, 5, d) for d in range(6)] == [hilbert_function(H, d) for d in range(6)]


def test_diamond_numerics():
    for n in (3, 4, 5):
        H = diamond_series(n)
        assert (krull_dimension(H), numerator_degree(H), multiplicity(H)) == (2, 3, 2 * n + 2)


@pytest.mark.parametrize("nk", [(3, 1), (3, 2), (4, 2)])
def test_lk_series_equals_lex_initial_ideal_series(nk):
    P = join_meet_ideal(lk(*nk), "lex")
    gb = buchberger(P.ideal)
    Q = join_meet_ideal(lk(*nk), "degrevlex")
    assert hilbert_series_gb(gb) == hilbert_series_ideal(Q.ideal)


monomial_sets = st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(*[st.integers(0, 3)] * n).filter(any), max_size=5)))


@given(monomial_sets)
def test_series_counts_standard_monomials(data):
    n, gens = data
    M = MonomialIdeal.of(n, gens)
    H = hilbert_series_monomial(M, n)
    for d in range(7):
        assert H.coefficient(d) == standard_count(M, n, d)


@given(monomial_sets)
def test_reduction_is_consistent(data):
    n, gens = data
    H = hilbert_series_monomial(MonomialIdeal.of(n, gens), n)
    h, d = H.reduced()
    assert HilbertSeries(h, d) == H
    if h:
        assert sum(h) != 0 or d == 0
