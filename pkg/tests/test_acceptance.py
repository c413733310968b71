"""Acceptance criteria 1-10, one test each.

Every test records a PASS/FAIL line that the terminal summary prints at the end
of the run (see conftest.py). Criteria that do not hold on the computed data are
left failing.
"""
import time
from math import comb

import pytest

from latmeet.betti import (
    betti_from_linear_quotients,
    betti_table,
    has_linear_resolution,
    invariants_report,
    is_linearly_related,
    linear_quotients_check,
    monomial_gb,
)
from latmeet.enumeration import lattices_of_size
from latmeet.fixtures import index, load
from latmeet.groebner import (
    Ideal,
    MonomialIdeal,
    buchberger,
    colon,
    colon_by_last_var_revlex,
    ideal_equal,
    ideal_sum,
    initial_ideal,
)
from latmeet.hilbert import HilbertSeries, hilbert_series_gb, hilbert_series_monomial
from latmeet.joinmeet import diamond_lq_order, join_meet_ideal, lk_suite, main_theorem_verifier
from latmeet.lattice import (
    birkhoff,
    boolean,
    diamond,
    find_pentagon,
    is_distributive,
    is_modular,
    poset_chain_plus_point,
)

RESULTS = {}


def record(num, ok, detail):
    RESULTS[num] = (bool(ok), detail)
    assert ok, detail


def diamond_data(n):
    P = join_meet_ideal(diamond(n))
    R = P.ring
    x, z = R.var("x"), R.var("z")
    y = [None] + [R.var(f"y{i}") for i in range(1, n + 1)]
    return P, R, x, z, y


def test_criterion_01_groebner_basis():
    bad, slow = [], []
    for n in range(3, 8):
        P, R, x, z, y = diamond_data(n)
        t0 = time.perf_counter()
        gb = buchberger(P.ideal)
        dt = time.perf_counter() - t0
        xz = x * z
        expected = [y[i] * y[j] - xz for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        expected += [xz * (y[k] - y[n]) for k in range(1, n)] + [xz * (y[n] * y[n] - xz)]
        if sorted(str(g.monic()) for g in gb.basis) != sorted(str(e.monic()) for e in expected):
            bad.append(n)
        if dt >= 5:
            slow.append((n, round(dt, 1)))
    record(1, not bad and not slow, f"wrong basis for n={bad}, over 5 s: {slow}")


def test_criterion_02_hilbert_series():
    bad = []
    for n in range(3, 8):
        P = diamond_data(n)[0]
        gb = buchberger(P.ideal)
        want = HilbertSeries((1, n, n, 1), 2)
        if hilbert_series_gb(gb) != want or hilbert_series_monomial(initial_ideal(gb)) != want:
            bad.append(n)
    record(2, not bad, f"series differs for n={bad}")


def test_criterion_03_invariants():
    bad, slow = [], []
    for n in (3, 4, 5):
        t0 = time.perf_counter()
        rep = invariants_report(diamond_data(n)[0].ideal)
        dt = time.perf_counter() - t0
        t = rep.betti
        got = (rep.dim, rep.depth, rep.pd, rep.reg,
               t.get(n, n + 1), t.get(n, n + 2), t.get(n, n + 3), rep.is_gorenstein)
        if got != (2, 2, n, 3, 0, 0, 1, True):
            bad.append((n, got))
        if dt >= 60:
            slow.append((n, round(dt, 1)))
    record(3, not bad and not slow, f"mismatch {bad}, over 60 s: {slow}")


def test_criterion_04_beta24():
    bad = []
    for n in (3, 4, 5):
        P, R, x, z, y = diamond_data(n)
        b = betti_table(P.ideal).get(2, 4)
        b_xz = betti_table(ideal_sum(P.ideal, [x * z])).get(2, 4)
        if not (b > 0 and b_xz == comb(n, 2)):
            bad.append((n, b, b_xz))
    record(4, not bad, f"(n, beta_2,4, beta_2,4 with xz) failing: {bad}")


def test_criterion_05_linear_quotients():
    bad = []
    for n in (3, 4, 5):
        P, R = diamond_data(n)[:2]
        ini = initial_ideal(buchberger(P.ideal))
        order = diamond_lq_order(R, n)
        assert MonomialIdeal.of(R.nvars, order).gens == ini.gens
        lq = linear_quotients_check(ini, order)
        if not lq.ok:
            bad.append((n, "order fails"))
            continue
        t = betti_from_linear_quotients(lq.r, [sum(m) for m in order], R.nvars)
        if (t.get(n, n + 1), t.get(n, n + 2)) != (0, n - 1):
            bad.append((n, "last column"))
        if t.entries != betti_table(monomial_gb(ini, R)).entries:
            bad.append((n, "table differs from Koszul"))
    record(5, not bad, f"failing: {bad}")


def test_criterion_06_colon_structure():
    bad = []
    for n in (3, 4, 5):
        P, R, x, z, y = diamond_data(n)
        gb = buchberger(P.ideal)
        J = colon_by_last_var_revlex(gb)
        want = [y[i] * y[j] - z * x for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        want += [x * (y[k] - y[n]) for k in range(1, n)] + [x * (y[n] * y[n] - x * z)]
        if sorted(str(g.monic()) for g in J.basis) != sorted(str(w.monic()) for w in want):
            bad.append((n, "I:z basis"))
        if not ideal_equal(colon(P.ideal, z), J.ideal()):
            bad.append((n, "revlex trick vs elimination"))
        regseq = [y[k] - y[n] for k in range(1, n)] + [y[n] * y[n] - x * z]
        if not ideal_equal(colon(J.ideal(), x), Ideal(R, regseq)):
            bad.append((n, "(I:z):x"))
    record(6, not bad, f"failing: {bad}")


def test_criterion_07_fixtures():
    t0 = time.perf_counter()
    bad = []
    for name, meta in sorted(index().items()):
        rep = main_theorem_verifier(load(name))
        if rep.reg != meta["expected_reg"] or rep.beta24 <= 0 or not rep.retract.passed:
            bad.append(f"{name}: reg {rep.reg} (expected {meta['expected_reg']}), "
                       f"beta_2,4 {rep.beta24}, retract {rep.retract.passed}")
    dt = time.perf_counter() - t0
    if dt >= 300:
        bad.append(f"total {dt:.0f} s over 5 min")
    record(7, not bad, "; ".join(bad))


def test_criterion_08_lk():
    bad, notes = [], []
    for n, k in ((3, 1), (3, 2), (4, 2)):
        rep = lk_suite(n, k)
        by = {c.claim.split(": ", 1)[1]: c for c in rep.claims}
        wanted = ["reg S/I", "reg S/ini(I)", "J:y_(k+1) has linear quotients",
                  "(J,y_(k+1)):y_k has linear quotients", "(J,y_(k+1),y_k) has linear quotients"]
        bad += [f"({n},{k}) {w}" for w in wanted if not by[w].passed]
        lex = rep.discrepancies["lex"]
        notes.append(f"({n},{k}) lex vs printed: computed only {lex['missing_from_printed']}, "
                     f"printed only {lex['not_in_computed']}")
    record(8, not bad, "failing: " + "; ".join(bad) + " | " + "; ".join(notes))


def test_criterion_09_distributive():
    bad = []
    for n in (2, 3):
        if not is_linearly_related(join_meet_ideal(boolean(n)).ideal):
            bad.append(f"B_{n}")
    for m in (2, 3, 4):
        Q = poset_chain_plus_point(m)
        I = join_meet_ideal(birkhoff(Q)).ideal
        t = betti_table(I)
        if not has_linear_resolution(I, t) or t.reg + 1 != len(Q) - Q.height():
            bad.append(f"chain_{m} + point")
    record(9, not bad, f"failing: {bad}")


def test_criterion_10_exhaustive():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for size in range(1, 7):
        for L in lattices_of_size(size):
            count += 1
            modular = is_modular(L)
            if modular != (find_pentagon(L) is None):
                bad.append(f"{L.name}: pentagon test")
            rep = invariants_report(join_meet_ideal(L).ideal)
            if not (rep.euler_ok and rep.auslander_buchsbaum):
                bad.append(f"{L.name}: Euler or Auslander-Buchsbaum")
            if modular and not is_distributive(L):
                if rep.reg < 3 or rep.betti.get(2, 4) <= 0:
                    bad.append(f"{L.name}: lower bound")
    dt = time.perf_counter() - t0
    if dt >= 600:
        bad.append(f"{dt:.0f} s over 10 min")
    record(10, not bad, f"{count} lattices; failing: {bad}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
