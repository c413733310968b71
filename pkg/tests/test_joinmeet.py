import json

import pytest

from latmeet.betti import betti_table
from latmeet.fixtures import index, load
from latmeet.groebner import buchberger
from latmeet.joinmeet import (
    Claim,
    NotInduced,
    PreconditionFailed,
    diamond_expected_gb,
    distributive_suite,
    fixture_claims,
    join_meet_ideal,
    lk_suite,
    main_theorem_verifier,
    retract_check,
    section1_suite,
)
from latmeet.lattice import LatticeError, boolean, chain, diamond, lk, pentagon
from latmeet.lattice import NotASublattice

from oracles import sympy_reduced_gb


def test_generators_are_meet_join_binomials():
    P = join_meet_ideal(diamond(3))
    assert len(P.ideal.gens) == 3
    assert str(P.generator("y1", "y2")) == str(P.ring.parse("y1*y2 - x*z"))
    # comparable pairs give nothing
    assert join_meet_ideal(chain(5)).ideal.is_zero()
    with pytest.raises(LatticeError):
        join_meet_ideal(diamond(3), precedence=["x", "y1"])


@pytest.mark.parametrize("n", [3, 4])
def test_section1_suite_all_pass(n):
    claims = section1_suite(n)
    failed = [c.claim for c in claims if not c.passed]
    assert failed == []
    assert len(claims) > 20


def test_section1_needs_n_at_least_3():
    with pytest.raises(PreconditionFailed):
        section1_suite(2)


def test_expected_diamond_basis_agrees_with_sympy():
    P = join_meet_ideal(diamond(4))
    got = sorted(str(g.monic()) for g in diamond_expected_gb(P.ring, 4))
    assert got == sympy_reduced_gb(P.ideal)


def test_claim_schema():
    d = Claim("c", "ref", {1, 2}, (3,), True).to_dict()
    assert set(d) == {"claim", "paper_ref", "expected", "computed", "pass"}
    assert d["expected"] == [1, 2]
    json.dumps(d)


def test_lk_degrevlex_reproduces_printed_list():
    for n, k in [(3, 1), (3, 2), (4, 1), (4, 2)]:
        rep = lk_suite(n, k)
        assert rep.discrepancies["degrevlex"] == {"missing_from_printed": [], "not_in_computed": []}


def test_lk_lex_differs_from_printed_list():
    # frozen from the lex initial ideal computed for n = 3, k = 1
    rep = lk_suite(3, 1)
    assert rep.discrepancies["lex"] == {"missing_from_printed": ["x2*y3"], "not_in_computed": ["x3*y2"]}


def test_lk_colon_list_omission():
    rep = lk_suite(3, 1)
    assert rep.discrepancies["degrevlex (J,y_(k+1),y_k)"]["missing_from_printed"] == ["x1*y3"]
    assert rep.discrepancies["degrevlex (J,y_(k+1)):y_k"] == {"missing_from_printed": [],
                                                             "not_in_computed": []}


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2)])
def test_lk_regularity_and_bound(n, k):
    by_name = {c.claim.split(": ", 1)[1]: c for c in lk_suite(n, k).claims}
    assert by_name["reg S/I"].computed == 3 and by_name["reg S/I"].passed
    assert by_name["reg S/ini(I)"].passed
    assert by_name["Euler identity"].passed
    assert by_name["exact-sequence bound on reg S/J"].passed
    assert by_name["J:y_(k+1) has linear quotients"].passed


def test_lk_middle_colon_is_not_linear_for_small_k():
    # (x2, x3, y2, x1*y3, y1*z) contains two coprime quadrics modulo variables
    by_name = {c.claim.split(": ", 1)[1]: c for c in lk_suite(3, 1).claims}
    c = by_name["reg S/((J,y_(k+1)):y_k)"]
    assert c.computed == 2 and not c.passed
    assert not by_name["(J,y_(k+1)):y_k has linear quotients"].passed
    assert lk_suite(3, 2).passed


def test_lk_rejects_large_n():
    with pytest.raises(PreconditionFailed):
        lk_suite(6, 2)


def test_retract_of_whole_lattice():
    L = diamond(3)
    rep = retract_check(L, L.elements)
    assert rep.passed
    assert rep.sub_table.entries == rep.table.entries


def test_retract_of_pentagon_chain():
    L = pentagon()
    rep = retract_check(L, ["a", "c", "d"])
    assert rep.passed
    assert rep.sub_table.entries == {(0, 0): 1}


def test_retract_rejects_non_induced_and_non_sublattices():
    L = pentagon()
    # b and c meet in a and join in e, but c is missing
    with pytest.raises(NotInduced):
        retract_check(L, ["a", "b", "e"])
    with pytest.raises(NotASublattice):
        retract_check(L, ["b", "c"])


def test_main_theorem_on_diamond():
    rep = main_theorem_verifier(diamond(3))
    assert rep.passed and rep.reg == 3 and rep.beta24 == 3
    assert set(rep.interval[2]) == {"y1", "y2", "y3"}
    assert all(c.passed for c in rep.claims(3, "D5"))


def test_main_theorem_preconditions():
    with pytest.raises(PreconditionFailed):
        main_theorem_verifier(boolean(3))
    with pytest.raises(PreconditionFailed):
        main_theorem_verifier(pentagon())


def test_distributive_suite_passes():
    claims = distributive_suite((2, 3))
    assert claims and all(c.passed for c in claims)


def test_fixture_index_and_claims():
    idx = index()
    assert set(idx) == {"reg3_a", "reg3_b", "reg3_c", "reg5_a", "reg5_b"}
    claims = fixture_claims(load("reg3_a"), idx["reg3_a"]["expected_reg"], "reg3_a")
    assert all(c.passed for c in claims)


def test_fixture_claims_reject_distributive_input():
    claims = fixture_claims(boolean(2), 3, "bogus")
    assert len(claims) == 1 and not claims[0].passed


def test_gb_of_lk_is_reduced():
    P = join_meet_ideal(lk(3, 1))
    gb = buchberger(P.ideal)
    assert sorted(str(g.monic()) for g in gb.basis) == sympy_reduced_gb(P.ideal)
    assert betti_table(P.ideal).reg == 3
