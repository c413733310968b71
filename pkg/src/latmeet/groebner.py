"""Buchberger's algorithm and the ideal operations built on it."""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .polyring import (
    Monomial,
    Polynomial,
    Ring,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_lcm,
    mono_mul,
)


class ResourceLimit(RuntimeError):
    pass


class OrderMismatch(ValueError):
    pass


DEFAULT_CAPS = {"max_reductions": 50_000, "max_degree": 40}


def caps_from_env(caps: Optional[dict] = None) -> dict:
    """Resource caps, overridable through ``LATMEET_CAPS=max_reductions=N,max_degree=D``."""
    out = dict(DEFAULT_CAPS)
    env = os.environ.get("LATMEET_CAPS", "")
    for item in filter(None, (s.strip() for s in env.split(","))):
        k, _, v = item.partition("=")
        if k in out and v.strip().isdigit() and int(v) > 0:
            out[k] = int(v)
    if caps:
        out.update(caps)
    return out


class Ideal:
    """Ideal given by generators; the empty generator list is the zero ideal."""

    def __init__(self, ring: Ring, gens: Iterable[Polynomial] = ()):
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator ring differs from ideal ring")
        self.ring = ring
        self.gens = gens

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal held by its minimal generators (sorted, no generator divides another)."""

    nvars: int
    gens: Tuple[Monomial, ...]

    @staticmethod
    def of(nvars: int, monos: Iterable[Monomial]) -> "MonomialIdeal":
        return MonomialIdeal(nvars, minimalize(monos))

    def contains(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.gens)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal.of(self.nvars, (mono_div(g, mono_gcd(g, m)) for g in self.gens))

    def add(self, monos: Iterable[Monomial]) -> "MonomialIdeal":
        return MonomialIdeal.of(self.nvars, list(self.gens) + list(monos))

    def degrees(self) -> List[int]:
        return [sum(g) for g in self.gens]

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)


def minimalize(monos: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    ms = sorted(set(monos), key=lambda m: (sum(m), m))
    out: List[Monomial] = []
    for m in ms:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(sorted(out))


# -- reduction kernels on raw term dicts --------------------------------------

Terms = Dict[Monomial, Fraction]


def _reduce(p: Terms, basis: Sequence[Tuple[Monomial, Terms]], key, full: bool = True) -> Terms:
    """Normal form of ``p`` modulo monic ``basis`` (pairs of lead monomial, terms)."""
    p = dict(p)
    rem: Terms = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, g in basis:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                for gm, gc in g.items():
                    t = mono_mul(gm, q)
                    v = p.get(t, 0) - c * gc
                    if v:
                        p[t] = v
                    else:
                        del p[t]
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[m] = c
            del p[m]
    return rem


def _monic(p: Terms, key) -> Tuple[Monomial, Terms]:
    lm = max(p, key=key)
    c = p[lm]
    if c != 1:
        p = {m: v / c for m, v in p.items()}
    return lm, p


def _spoly(lf: Monomial, f: Terms, lg: Monomial, g: Terms) -> Terms:
    lcm = mono_lcm(lf, lg)
    a = mono_div(lcm, lf)
    b = mono_div(lcm, lg)
    out: Terms = {}
    for m, c in f.items():
        out[mono_mul(m, a)] = c
    for m, c in g.items():
        t = mono_mul(m, b)
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


class GroebnerBasis:
    """Reduced Groebner basis: monic elements sorted by decreasing leading monomial."""

    def __init__(self, ring: Ring, basis: List[Polynomial], reduced: bool = True):
        self.ring = ring
        self.basis = basis
        self.reduced = reduced
        self._pairs = [(g.lm, g.terms) for g in basis]

    @property
    def order(self):
        return self.ring.order

    def lms(self) -> List[Monomial]:
        return [g.lm for g in self.basis]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        return Polynomial(self.ring, _reduce(f.terms, self._pairs, self.ring.order.key))

    def normal_form_terms(self, p: Terms) -> Terms:
        return _reduce(p, self._pairs, self.ring.order.key)

    def member(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(sum(g.lm) == 0 for g in self.basis)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and sorted(map(str, self.basis)) == sorted(map(str, other.basis)))

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.basis]})"


def buchberger(ideal: Ideal, caps: Optional[dict] = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Pairs are selected by the normal strategy (smallest lcm first) and pruned
    with the Gebauer-Moeller criteria.
    """
    caps = caps_from_env(caps)
    ring = ideal.ring
    key = ring.order.key
    polys: List[Tuple[Monomial, Terms]] = []
    live: List[int] = []
    pairs: List[tuple] = []
    counter = 0

    def push(i, j):
        nonlocal counter
        lcm = mono_lcm(polys[i][0], polys[j][0])
        counter += 1
        heapq.heappush(pairs, (sum(lcm), key(lcm), counter, i, j, lcm))

    def update(h: int):
        lh = polys[h][0]
        C = [(g, mono_lcm(lh, polys[g][0])) for g in live]
        D = []
        while C:
            g1, l1 = C.pop(0)
            if mono_coprime(lh, polys[g1][0]) or not any(
                    mono_divides(l2, l1) for _, l2 in C + D):
                D.append((g1, l1))
        survivors = []
        for item in pairs:
            i, j, l = item[3], item[4], item[5]
            if (mono_divides(lh, l) and mono_lcm(polys[i][0], lh) != l
                    and mono_lcm(polys[j][0], lh) != l):
                continue
            survivors.append(item)
        if len(survivors) != len(pairs):
            pairs[:] = survivors
            heapq.heapify(pairs)
        for g, _ in D:
            if not mono_coprime(lh, polys[g][0]):
                push(g, h)
        live[:] = [g for g in live if not mono_divides(lh, polys[g][0])] + [h]

    def add(p: Terms):
        lm, p = _monic(p, key)
        if sum(lm) > caps["max_degree"]:
            raise ResourceLimit(f"degree {sum(lm)} exceeds cap {caps['max_degree']}")
        polys.append((lm, p))
        update(len(polys) - 1)

    gens = sorted((dict(g.terms) for g in ideal.gens), key=lambda t: key(max(t, key=key)))
    for g in gens:
        r = _reduce(g, [polys[i] for i in live], key)
        if r:
            add(r)
    reductions = 0
    while pairs:
        _, _, _, i, j, _ = heapq.heappop(pairs)
        reductions += 1
        if reductions > caps["max_reductions"]:
            raise ResourceLimit(f"more than {caps['max_reductions']} pair reductions")
        s = _spoly(polys[i][0], polys[i][1], polys[j][0], polys[j][1])
        r = _reduce(s, [polys[k] for k in live], key)
        if r:
            add(r)
    return _make_reduced(ring, [polys[i] for i in live])


def _make_reduced(ring: Ring, elems: List[Tuple[Monomial, Terms]]) -> GroebnerBasis:
    key = ring.order.key
    elems = sorted(elems, key=lambda e: key(e[0]))
    minimal = []
    for lm, p in elems:
        if not any(mono_divides(l2, lm) for l2, _ in minimal):
            minimal.append((lm, p))
    out = []
    for idx, (lm, p) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = {m: c for m, c in p.items() if m != lm}
        tail = _reduce(tail, others, key)
        tail[lm] = Fraction(1)
        out.append(Polynomial(ring, tail))
    out.sort(key=lambda g: key(g.lm), reverse=True)
    return GroebnerBasis(ring, out, reduced=True)


def groebner(polys: Iterable[Polynomial], ring: Optional[Ring] = None, caps: Optional[dict] = None) -> GroebnerBasis:
    polys = list(polys)
    if ring is None:
        ring = polys[0].ring
    return buchberger(Ideal(ring, polys), caps)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion, checked from scratch on every pair."""
    key = gb.ring.order.key
    B = gb._pairs
    for a in range(len(B)):
        for b in range(a + 1, len(B)):
            s = _spoly(B[a][0], B[a][1], B[b][0], B[b][1])
            if _reduce(s, B, key):
                return False
    return True


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal.of(gb.ring.nvars, gb.lms())


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def member(f: Polynomial, gb: GroebnerBasis) -> bool:
    return gb.member(f)


# -- ideal operations ---------------------------------------------------------

def _fresh_name(ring: Ring, base: str = "t") -> str:
    name = base
    k = 0
    while name in ring.index:
        k += 1
        name = f"{base}{k}"
    return name


def eliminate(ideal: Ideal, keep_vars: Sequence[str], caps: Optional[dict] = None) -> Ideal:
    """Generators of ``ideal`` intersected with Q[keep_vars], as an ideal of that subring.

    The subring keeps the ambient order kind and the ambient variable precedence.
    """
    ring = ideal.ring
    keep = [n for n in ring.names if n in set(keep_vars)]
    unknown = set(keep_vars) - set(ring.names)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)}")
    sub = Ring(keep, ring.order.kind if ring.order.kind != "elim" else "degrevlex")
    drop = [n for n in ring.names if n not in set(keep)]
    if not drop:
        return Ideal(sub, [g.map_to(sub, list(range(ring.nvars))) for g in ideal.gens])
    if not keep:
        raise ValueError("must keep at least one variable")
    big = Ring(drop + keep, "elim", block=len(drop))
    perm = [big.index[n] for n in ring.names]
    gb = buchberger(Ideal(big, [g.map_to(big, perm) for g in ideal.gens]), caps)
    k = len(drop)
    back = [None] * k + list(range(len(keep)))
    out = []
    for g in gb.basis:
        if all(not any(m[:k]) for m in g.terms):
            out.append(Polynomial(sub, {m[k:]: c for m, c in g.terms.items()}))
    del back
    return Ideal(sub, out)


def intersect(I: Ideal, J: Ideal, caps: Optional[dict] = None) -> Ideal:
    """I cap J through the auxiliary-variable elimination ``tI + (1-t)J``."""
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ring mismatch")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    t = _fresh_name(ring)
    big = Ring((t,) + ring.names, ring.order.kind if ring.order.kind != "elim" else "degrevlex")
    perm = list(range(1, ring.nvars + 1))
    tv = big.var(t)
    gens = [tv * g.map_to(big, perm) for g in I.gens]
    gens += [(big.one() - tv) * g.map_to(big, perm) for g in J.gens]
    elim = eliminate(Ideal(big, gens), ring.names, caps)
    return Ideal(ring, [g.map_to(ring, list(range(ring.nvars))) for g in elim.gens])


def exact_quotient(p: Polynomial, f: Polynomial) -> Polynomial:
    from .polyring import divide

    (q,), r = divide(p, [f])
    if not r.is_zero():
        raise ArithmeticError(f"{f} does not divide {p}")
    return q


def colon(I: Ideal, f: Polynomial, caps: Optional[dict] = None) -> Ideal:
    """I : f computed as (I cap (f)) / f."""
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    if I.is_zero():
        return Ideal(I.ring, [])
    if len(f.terms) == 1 and sum(f.lm) == 0:
        return Ideal(I.ring, list(I.gens))
    inter = intersect(I, Ideal(I.ring, [f]), caps)
    return Ideal(I.ring, [exact_quotient(g, f) for g in inter.gens])


def colon_by_last_var_revlex(gb: GroebnerBasis) -> GroebnerBasis:
    """Groebner basis of I : x_last for homogeneous I under degrevlex.

    Each basis element is divided by the largest power of the last variable
    that divides it; the result is then made reduced.
    """
    ring = gb.ring
    if ring.order.kind != "degrevlex":
        raise OrderMismatch("needs a degrevlex Groebner basis")
    if not all(g.is_homogeneous() for g in gb.basis):
        raise ValueError("needs a homogeneous ideal")
    last = ring.nvars - 1
    key = ring.order.key
    elems = []
    for g in gb.basis:
        k = min(m[last] for m in g.terms)
        if k:
            shift = (0,) * last + (k,)
            terms = {mono_div(m, shift): c for m, c in g.terms.items()}
        else:
            terms = dict(g.terms)
        elems.append(_monic(terms, key))
    return _make_reduced(ring, elems)


def ideal_sum(I: Ideal, extra: Iterable) -> Ideal:
    """(I, extra); ``extra`` holds polynomials or variable names."""
    gens = list(I.gens)
    for e in extra:
        gens.append(I.ring.var(e) if isinstance(e, str) else e)
    return Ideal(I.ring, gens)


def ideal_equal(I: Ideal, J: Ideal, caps: Optional[dict] = None) -> bool:
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    if I.is_zero() or J.is_zero():
        return I.is_zero() == J.is_zero() or _reduced_zero(I, J, caps)
    return buchberger(I, caps) == buchberger(J, caps)


def _reduced_zero(I: Ideal, J: Ideal, caps) -> bool:
    nz = J if I.is_zero() else I
    return not buchberger(nz, caps).basis


def ideal_contains(big: Ideal, small: Ideal, caps: Optional[dict] = None) -> bool:
    if small.is_zero():
        return True
    if big.is_zero():
        return False
    gb = buchberger(big, caps)
    return all(gb.member(g) for g in small.gens)


def substitute_linear(gb_or_ideal, var: str, replacement: Polynomial, ring_out: Ring) -> Ideal:
    """Substitute ``var := replacement`` (a linear form in the other variables) and drop ``var``.

    ``ring_out`` must list the remaining variables; ``replacement`` lives in the source ring.
    """
    src = gb_or_ideal.ring
    gens = gb_or_ideal.basis if isinstance(gb_or_ideal, GroebnerBasis) else gb_or_ideal.gens
    v = src.index[var]
    perm = [ring_out.index[n] if n != var else None for n in src.names]
    rep_terms = [(c, m) for m, c in replacement.terms.items()]
    powers = {0: {src.one_monomial: Fraction(1)}}

    def rep_pow(k):
        if k not in powers:
            prev = rep_pow(k - 1)
            d: Terms = {}
            for m1, c1 in prev.items():
                for c2, m2 in rep_terms:
                    t = mono_mul(m1, m2)
                    val = d.get(t, 0) + c1 * c2
                    if val:
                        d[t] = val
                    else:
                        d.pop(t, None)
            powers[k] = d
        return powers[k]

    out = []
    for g in gens:
        acc: Terms = {}
        for m, c in g.terms.items():
            k = m[v]
            base = m[:v] + (0,) + m[v + 1:]
            for m2, c2 in rep_pow(k).items():
                t = mono_mul(base, m2)
                val = acc.get(t, 0) + c * c2
                if val:
                    acc[t] = val
                else:
                    acc.pop(t, None)
        terms = {}
        for m, c in acc.items():
            e = [0] * ring_out.nvars
            for i, x in enumerate(m):
                if x:
                    e[perm[i]] += x
            terms[tuple(e)] = c
        out.append(Polynomial(ring_out, terms))
    return Ideal(ring_out, out)
