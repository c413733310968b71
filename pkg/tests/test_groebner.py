import pytest
from hypothesis import given, strategies as st

from latmeet.groebner import (
    Ideal,
    MonomialIdeal,
    OrderMismatch,
    ResourceLimit,
    buchberger,
    colon,
    colon_by_last_var_revlex,
    eliminate,
    ideal_contains,
    ideal_equal,
    ideal_sum,
    initial_ideal,
    intersect,
    is_groebner,
    member,
    normal_form,
)
from latmeet.joinmeet import diamond_expected_gb, join_meet_ideal
from latmeet.lattice import boolean, diamond, lk, pentagon
from latmeet.polyring import Ring

from oracles import sympy_reduced_gb


def D(n):
    return join_meet_ideal(diamond(n))


def strs(polys):
    return sorted(str(p.monic()) for p in polys)


def test_diamond5_groebner_basis():
    P = D(3)
    gb = buchberger(P.ideal)
    assert strs(gb) == strs(diamond_expected_gb(P.ring, 3))
    assert len(gb) == 6


@pytest.mark.parametrize("n", [3, 4, 5])
def test_diamond_gb_matches_sympy(n):
    assert strs(buchberger(D(n).ideal)) == sympy_reduced_gb(D(n).ideal)


@pytest.mark.parametrize("order", ["lex", "deglex", "degrevlex"])
def test_join_meet_ideals_match_sympy_in_every_order(order):
    for L in (pentagon(), boolean(2), lk(3, 1)):
        P = join_meet_ideal(L, order)
        assert strs(buchberger(P.ideal)) == sympy_reduced_gb(P.ideal)


def test_trivial_bases():
    R = Ring(["x", "y", "z"])
    f = R.parse("2*x*y - 4*z^2")
    assert strs(buchberger(Ideal(R, [f]))) == [str(f.monic())]
    P = join_meet_ideal(boolean(2))
    assert len(buchberger(P.ideal)) == 1


def test_initial_ideal_of_the_diamond():
    P = D(4)
    M = initial_ideal(buchberger(P.ideal))
    m = P.ring.monomial
    expect = {m({f"y{i}": 1, f"y{j}": 1}) for i in range(1, 5) for j in range(i + 1, 5)}
    expect |= {m({"x": 1, f"y{k}": 1, "z": 1}) for k in range(1, 4)}
    expect.add(m({"x": 1, "y4": 2, "z": 1}))
    assert set(M.gens) == expect


def test_membership():
    P = D(3)
    gb = buchberger(P.ideal)
    R = P.ring
    assert member(R.parse("y1*y3 - x*z"), gb)
    assert not member(R.one(), gb)
    assert member(R.parse("x*y1*z - x*y2*z"), gb)


def test_normal_form_agrees_with_naive_reduction():
    P = D(3)
    gb = buchberger(P.ideal)
    R = P.ring
    f = R.parse("y1*y2*y3")
    # naive: rewrite leading terms one step at a time until nothing is divisible
    r, rem = f, R.zero()
    while not r.is_zero():
        lt = r.lm
        g = next((g for g in gb if all(a >= b for a, b in zip(lt, g.lm))), None)
        if g is None:
            c = r.terms[lt]
            rem = rem + R.from_terms([(c, lt)])
            r = r - R.from_terms([(c, lt)])
            continue
        q = tuple(a - b for a, b in zip(lt, g.lm))
        r = r - g.mul_term(r.terms[lt], q)
    assert normal_form(f, gb) == rem


def test_eliminate_examples():
    R = Ring(["x", "y"])
    assert eliminate(Ideal(R, [R.parse("x - y")]), ["y"]).is_zero()
    I = D(3).ideal
    assert ideal_equal(eliminate(I, list(I.ring.names)), I)


def test_colon_examples():
    for n in (3, 4):
        P = D(n)
        R = P.ring
        J = colon(P.ideal, R.var("z"))
        gbJ = buchberger(J)
        x, z = R.var("x"), R.var("z")
        y = [None] + [R.var(f"y{i}") for i in range(1, n + 1)]
        expect = [y[i] * y[j] - z * x for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        expect += [x * (y[k] - y[n]) for k in range(1, n)] + [x * (y[n] * y[n] - x * z)]
        assert strs(gbJ) == strs(expect)
        assert colon_by_last_var_revlex(buchberger(P.ideal)) == gbJ
        Jx = colon(J, x)
        regseq = [y[k] - y[n] for k in range(1, n)] + [y[n] * y[n] - x * z]
        assert ideal_equal(Jx, Ideal(R, regseq))
    I = D(3).ideal
    assert ideal_equal(colon(I, I.ring.one()), I)


def test_colon_by_last_var_on_monomials():
    R = Ring(["x", "z"])
    gb = buchberger(Ideal(R, [R.parse("x*z")]))
    assert strs(colon_by_last_var_revlex(gb)) == ["x"]
    with pytest.raises(OrderMismatch):
        colon_by_last_var_revlex(buchberger(Ideal(Ring(["x", "z"], "lex"), [Ring(["x", "z"], "lex").parse("x*z")])))


def test_ideal_equality_and_sums():
    I = D(3).ideal
    perm = Ideal(I.ring, list(reversed(I.gens)))
    assert ideal_equal(I, perm)
    bigger = ideal_sum(I, ["x"])
    assert ideal_contains(bigger, I) and not ideal_contains(I, bigger)


def test_intersection_contains_product():
    R = Ring(["x", "y", "z"])
    I, J = Ideal(R, [R.parse("x"), R.parse("y")]), Ideal(R, [R.parse("y"), R.parse("z")])
    K = intersect(I, J)
    assert ideal_equal(K, Ideal(R, [R.parse("y"), R.parse("x*z")]))


def test_resource_cap():
    with pytest.raises(ResourceLimit):
        buchberger(D(4).ideal, caps={"max_reductions": 2})
    with pytest.raises(ResourceLimit):
        buchberger(D(3).ideal, caps={"max_degree": 2})


def test_caps_from_environment(monkeypatch):
    monkeypatch.setenv("LATMEET_CAPS", "max_reductions=3")
    with pytest.raises(ResourceLimit):
        buchberger(D(4).ideal)


R3 = Ring(["a", "b", "c"])
binomials = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.tuples(*[st.integers(0, 2)] * 3)),
    min_size=1, max_size=3)


@given(binomials, st.sampled_from(["lex", "deglex", "degrevlex"]))
def test_random_binomial_ideals(pairs, order):
    R = R3.with_order(order)
    gens = [R.from_terms([(1, a), (-1, b)]) for a, b in pairs]
    I = Ideal(R, [g for g in gens if not g.is_zero()])
    if I.is_zero():
        return
    gb = buchberger(I)
    assert is_groebner(gb)
    assert all(gb.member(g) for g in I.gens)
    assert strs(gb) == sympy_reduced_gb(I)
