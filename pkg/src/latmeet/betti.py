"""Graded Betti numbers of S/I from Koszul homology, and the invariants read off them.

beta_{i,j}(S/I) = dim_K H_i(x_1..x_N; S/I)_j.  The Koszul complex is built on
the standard-monomial basis of S/I, split into blocks by every grading the
ideal respects, and each block rank is computed exactly.

Before building the complex, linear forms that are verified non-zerodivisors
are factored out one at a time (Betti numbers do not change).  Verification
is exact: l is a non-zerodivisor on S/I iff S/(I, l) has K-polynomial equal
to that of S/I.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import kernels
from .groebner import (
    GroebnerBasis,
    Ideal,
    MonomialIdeal,
    ResourceLimit,
    buchberger,
    initial_ideal,
    substitute_linear,
)
from .hilbert import HilbertSeries, hilbert_series_gb, hilbert_series_monomial
from .polyring import Monomial, Polynomial, Ring, mono_div, mono_divides, mono_mul


class NotEquigenerated(ValueError):
    pass


# -- tables -------------------------------------------------------------------

@dataclass
class BettiTable:
    """beta_{i,j} of S/I; zero entries are not stored."""

    entries: Dict[Tuple[int, int], int]
    nvars: int
    complete_through: int
    euler_ok: Optional[bool] = None

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def pd(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def reg(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def total(self, i: int) -> int:
        return sum(b for (ii, _), b in self.entries.items() if ii == i)

    def shifts(self, i: int) -> List[int]:
        return sorted(j for (ii, j) in self.entries if ii == i)

    def euler_polynomial(self) -> List[int]:
        """sum_{i,j} (-1)^i beta_{i,j} t^j, lowest degree first."""
        top = max((j for _, j in self.entries), default=0)
        out = [0] * (top + 1)
        for (i, j), b in self.entries.items():
            out[j] += (-1) ** i * b
        while out and out[-1] == 0:
            out.pop()
        return out

    def check_euler(self, series: HilbertSeries) -> bool:
        """Euler identity against the K-polynomial over (1-t)^nvars, degrees <= complete_through."""
        K = list(series.as_denominator(self.nvars).numerator)
        E = self.euler_polynomial()
        J = self.complete_through
        pad = lambda p: [p[k] if k < len(p) else 0 for k in range(J + 1)]
        ok = pad(K) == pad(E) and len(K) <= J + 1
        return ok

    def dominated_by(self, other: "BettiTable") -> bool:
        J = min(self.complete_through, other.complete_through)
        return all(b <= other.get(i, j) for (i, j), b in self.entries.items() if j <= J)

    def is_symmetric(self) -> bool:
        """Symmetry (i, j) -> (pd - i, pd + reg - j) expected of Gorenstein quotients."""
        p, r = self.pd, self.reg
        return all(self.get(p - i, p + r - j) == b for (i, j), b in self.entries.items())

    def to_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "entries": [{"i": i, "j": j, "beta": b} for (i, j), b in sorted(self.entries.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "BettiTable":
        entries = {(e["i"], e["j"]): e["beta"] for e in d["entries"] if e["beta"]}
        top = max((j for _, j in entries), default=0)
        return BettiTable(entries, d["nvars"], d.get("complete_through", top))

    def diagram(self) -> str:
        """Macaulay-style diagram: column i, row j - i."""
        if not self.entries:
            return "(zero module)"
        cols = range(self.pd + 1)
        rows = range(0, self.reg + 1)
        cells = [[str(self.get(i, i + r)) if self.get(i, i + r) else "." for i in cols] for r in rows]
        totals = [str(self.total(i)) for i in cols]
        width = max(len(c) for row in cells + [totals] for c in row)
        head = "       " + " ".join(str(i).rjust(width) for i in cols)
        lines = [head, "total: " + " ".join(t.rjust(width) for t in totals)]
        for r, row in zip(rows, cells):
            lines.append(f"{r:>5}: " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


# -- standard monomials and gradings -----------------------------------------

def standard_monomials(gb: GroebnerBasis, d: int) -> List[Monomial]:
    """Degree-d monomials outside the initial ideal, in increasing lex order of exponents."""
    return _StdCache(gb).get(d)


class _StdCache:
    def __init__(self, gb: GroebnerBasis):
        self.N = gb.ring.nvars
        self.lms = gb.lms()
        self.levels: List[List[Monomial]] = []
        if any(sum(m) == 0 for m in self.lms):
            self.levels.append([])
        else:
            self.levels.append([(0,) * self.N])

    def get(self, d: int) -> List[Monomial]:
        if d < 0:
            return []
        while len(self.levels) <= d:
            prev = self.levels[-1]
            nxt = set()
            for m in prev:
                for v in range(self.N):
                    e = m[:v] + (m[v] + 1,) + m[v + 1:]
                    if not any(mono_divides(g, e) for g in self.lms):
                        nxt.add(e)
            self.levels.append(sorted(nxt))
        return self.levels[d]


def _nullspace(rows: List[List[int]], n: int) -> List[List[int]]:
    """Integer basis of {w : r.w = 0 for all r}."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rix = 0
    for c in range(n):
        p = next((k for k in range(rix, len(M)) if M[k][c]), None)
        if p is None:
            continue
        M[rix], M[p] = M[p], M[rix]
        pv = M[rix][c]
        M[rix] = [x / pv for x in M[rix]]
        for k in range(len(M)):
            if k != rix and M[k][c]:
                f = M[k][c]
                M[k] = [a - f * b for a, b in zip(M[k], M[rix])]
        pivots.append(c)
        rix += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        w = [Fraction(0)] * n
        w[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            w[pc] = -M[r][fc]
        den = lcm(*(x.denominator for x in w))
        basis.append([int(x * den) for x in w])
    return basis


def grading_matrix(polys: Iterable[Polynomial], nvars: int) -> List[List[int]]:
    """Integer weight vectors making every polynomial homogeneous."""
    diffs = []
    for p in polys:
        ms = list(p.terms)
        for m in ms[1:]:
            diffs.append([a - b for a, b in zip(m, ms[0])])
    if not diffs:
        return [[int(i == k) for i in range(nvars)] for k in range(nvars)]
    return _nullspace(diffs, nvars)


# -- Koszul homology ----------------------------------------------------------

def _integer_row(row: Dict[int, Fraction]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    return {k: int(v * den) for k, v in row.items()}


def _plain(c):
    return c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c


class _MonomialNF:
    """Normal forms of single monomials, memoized.

    If lm(g) divides e with e = q * lm(g), then NF(e) = -sum c_t NF(q * t) over the
    tail terms of monic g; every q * t is smaller than e, so each monomial is
    reduced once no matter how many products reach it.
    """

    def __init__(self, gb: GroebnerBasis):
        self.basis = [(lm, [(m, _plain(-c)) for m, c in g.items() if m != lm])
                      for lm, g in gb._pairs]
        self.memo: Dict[Monomial, Dict[Monomial, object]] = {}

    def _step(self, e):
        for lm, tail in self.basis:
            if mono_divides(lm, e):
                q = mono_div(e, lm)
                return [(mono_mul(m, q), c) for m, c in tail]
        return None

    def of(self, e: Monomial) -> Dict[Monomial, object]:
        memo = self.memo
        if e in memo:
            return memo[e]
        stack = [e]
        pending: Dict[Monomial, list] = {}
        while stack:
            m = stack[-1]
            if m in memo:
                stack.pop()
                continue
            tail = pending.get(m)
            if tail is None:
                tail = self._step(m)
                if tail is None:
                    memo[m] = {m: 1}
                    stack.pop()
                    continue
                pending[m] = tail
                todo = [t for t, _ in tail if t not in memo]
                if todo:
                    stack.extend(todo)
                    continue
            out: Dict[Monomial, object] = {}
            for t, c in tail:
                for mm, v in memo[t].items():
                    x = out.get(mm, 0) + c * v
                    if x:
                        out[mm] = x
                    else:
                        out.pop(mm, None)
            memo[m] = out
            del pending[m]
            stack.pop()
        return memo[e]


def koszul_betti(gb: GroebnerBasis, j_cap: int, grading: bool = True) -> Dict[Tuple[int, int], int]:
    """All nonzero beta_{i,j}(S/I) with j <= j_cap, from Koszul homology on all variables."""
    ring = gb.ring
    N = ring.nvars
    std = _StdCache(gb)
    if not std.get(0):
        return {}
    W = grading_matrix(gb.basis, N) if grading else [[1] * N]
    wvar = [tuple(w[v] for w in W) for v in range(N)]
    wcache: Dict[Monomial, tuple] = {}

    def wmono(m):
        r = wcache.get(m)
        if r is None:
            r = tuple(sum(a * b for a, b in zip(w, m)) for w in W)
            wcache[m] = r
        return r

    nf = _MonomialNF(gb)

    def times(m: Monomial, v: int):
        return nf.of(m[:v] + (m[v] + 1,) + m[v + 1:])

    subsets = [list(itertools.combinations(range(N), i)) for i in range(N + 1)]
    fweight = {F: tuple(map(sum, zip(*(wvar[v] for v in F)))) if F else (0,) * len(W)
               for i in range(N + 1) for F in subsets[i]}
    result: Dict[Tuple[int, int], int] = {}
    for j in range(j_cap + 1):
        # blocks[i][weight] = {basis element: index}
        blocks: List[Dict[tuple, Dict[tuple, int]]] = []
        for i in range(N + 1):
            d = j - i
            bl: Dict[tuple, Dict[tuple, int]] = {}
            if d >= 0:
                for m in std.get(d):
                    wm = wmono(m)
                    for F in subsets[i]:
                        w = tuple(a + b for a, b in zip(wm, fweight[F]))
                        idx = bl.setdefault(w, {})
                        idx[(F, m)] = len(idx)
            blocks.append(bl)
        ranks = [0] * (N + 2)
        for i in range(1, N + 1):
            total = 0
            for w, src in blocks[i].items():
                tgt = blocks[i - 1].get(w)
                if not tgt:
                    continue
                rows = []
                for (F, m) in src:
                    row: Dict[int, Fraction] = {}
                    for pos, v in enumerate(F):
                        G = F[:pos] + F[pos + 1:]
                        sign = -1 if pos % 2 else 1
                        for mm, c in times(m, v).items():
                            t = tgt[(G, mm)]
                            val = row.get(t, 0) + sign * c
                            if val:
                                row[t] = val
                            else:
                                row.pop(t, None)
                    if row:
                        rows.append(_integer_row(row))
                total += kernels.sparse_rank(rows, len(tgt))
            ranks[i] = total
        for i in range(N + 1):
            dim = sum(len(b) for b in blocks[i].values())
            beta = dim - ranks[i] - ranks[i + 1]
            if beta:
                result[(i, j)] = beta
    return result


# -- regular sequence reduction ----------------------------------------------

@dataclass
class Reduction:
    gb: GroebnerBasis
    forms: List[str] = field(default_factory=list)


def _sparse_forms(ring: Ring, rng: random.Random, tries: int):
    """Forms a - (+-b1 +- b2 ...) with few terms; small coefficients keep the
    later Koszul matrices inside machine integers."""
    names = list(ring.names)
    a, rest = names[-1], names[:-1]
    for k in range(2, len(rest) + 1):
        for _ in range(tries):
            rep = ring.zero()
            for b in rng.sample(rest, k):
                rep = rep + ring.var(b).scale(rng.choice((1, -1)))
            yield a, rep


def _dense_form(ring: Ring, rng: random.Random):
    names = list(ring.names)
    rep = ring.zero()
    for b in names[:-1]:
        rep = rep + ring.var(b).scale(rng.randint(-30, 30))
    return names[-1], rep


def _form_str(a: str, rep: Polynomial) -> str:
    if rep.is_zero():
        return a
    return f"{a} - ({rep})"


def reduce_regular_sequence(gb: GroebnerBasis, caps: Optional[dict] = None,
                            tries: int = 6, seed: int = 0) -> Reduction:
    """Factor out linear non-zerodivisors of S/I, one at a time.

    Each accepted form ``a - rep`` is checked exactly by comparing K-polynomials.
    Per step: single variables, then one dense random probe. If the probe is a
    zero divisor, depth is almost surely exhausted and the search stops;
    otherwise a sparse form is preferred to the probe. Stopping early only
    costs speed, since the Betti numbers of the reduced ring are the same.
    """
    rng = random.Random(seed)
    forms: List[str] = []
    dim = hilbert_series_gb(gb).dimension if gb.basis else gb.ring.nvars

    def attempt(ring, a, rep, K):
        sub = Ring([n for n in ring.names if n != a], ring.order.kind)
        gb2 = buchberger(substitute_linear(gb, a, rep, sub), caps)
        return gb2 if hilbert_series_gb(gb2).numerator == K else None

    while gb.ring.nvars > 1 and not gb.is_unit_ideal() and len(forms) < dim:
        ring = gb.ring
        K = hilbert_series_gb(gb).numerator
        found = None
        for a in reversed(ring.names):
            gb2 = attempt(ring, a, ring.zero(), K)
            if gb2 is not None:
                found = (gb2, a)
                break
        if found is None:
            a, rep = _dense_form(ring, rng)
            probe = attempt(ring, a, rep, K)
            if probe is None:
                break
            found = (probe, _form_str(a, rep))
            for a, rep in _sparse_forms(ring, rng, tries):
                gb2 = attempt(ring, a, rep, K)
                if gb2 is not None:
                    found = (gb2, _form_str(a, rep))
                    break
        gb = found[0]
        forms.append(found[1])
    return Reduction(gb, forms)


# -- public entry points ------------------------------------------------------

def _as_gb(I, caps=None) -> GroebnerBasis:
    if isinstance(I, GroebnerBasis):
        return I
    if isinstance(I, MonomialIdeal):
        raise TypeError("pass monomial ideals through monomial_gb()")
    if not I.is_homogeneous():
        raise ValueError("Betti numbers need a homogeneous ideal")
    if I.is_zero():
        return GroebnerBasis(I.ring, [], reduced=True)
    return buchberger(I, caps)


def monomial_gb(M: MonomialIdeal, ring: Optional[Ring] = None) -> GroebnerBasis:
    if ring is None:
        ring = Ring([f"v{i}" for i in range(M.nvars)])
    return GroebnerBasis(ring, [Polynomial(ring, {g: Fraction(1)}) for g in M.gens])


def default_jcap(series: HilbertSeries, nvars: int) -> int:
    """Degree of the K-polynomial over (1 - t)^nvars.

    The largest internal degree of a nonzero Betti number equals it unless the
    top terms cancel in the alternating sum; the Euler check flags a shortfall.
    """
    if not series.numerator:
        return 0
    h, d = series.reduced()
    return max(len(h) - 1 + nvars - d, 0)


def _compute(gb: GroebnerBasis, j_cap: Optional[int], reduce: bool, caps: Optional[dict]):
    series = hilbert_series_gb(gb)
    work = reduce_regular_sequence(gb, caps) if reduce else Reduction(gb)
    if j_cap is None:
        j_cap = default_jcap(series, gb.ring.nvars)
    table = BettiTable(koszul_betti(work.gb, j_cap), gb.ring.nvars, j_cap)
    table.euler_ok = table.check_euler(series)
    return table, work, series


def betti_table(I, j_cap: Optional[int] = None, reduce: bool = True,
                caps: Optional[dict] = None) -> BettiTable:
    """Betti table of S/I for an Ideal, a GroebnerBasis or a MonomialIdeal."""
    if isinstance(I, MonomialIdeal):
        gb = monomial_gb(I)
    else:
        gb = _as_gb(I, caps)
    return _compute(gb, j_cap, reduce, caps)[0]


# -- verdicts -----------------------------------------------------------------

def _generator_degrees(I) -> List[int]:
    if isinstance(I, MonomialIdeal):
        return I.degrees()
    if isinstance(I, GroebnerBasis):
        raise TypeError("pass the ideal, not its Groebner basis")
    return [g.degree() for g in I.gens]


def _equigenerated_degree(I) -> int:
    degs = set(_generator_degrees(I))
    if len(degs) != 1:
        raise NotEquigenerated(f"generator degrees {sorted(degs)}")
    return degs.pop()


def is_linearly_related(I, table: Optional[BettiTable] = None) -> bool:
    """beta_{2,j}(S/I) = 0 for all j >= d + 2 (I generated in degree d)."""
    d = _equigenerated_degree(I)
    table = table or betti_table(I)
    return all(b == 0 for (i, j), b in table.entries.items() if i == 2 and j >= d + 2)


def has_linear_resolution(I, table: Optional[BettiTable] = None) -> bool:
    """beta_{i,j}(S/I) = 0 unless j = i + d - 1, for every i >= 1."""
    d = _equigenerated_degree(I)
    table = table or betti_table(I)
    return all(j == i + d - 1 for (i, j) in table.entries if i >= 1)


@dataclass
class AlgebraReport:
    nvars: int
    dim: int
    depth: int
    pd: int
    reg: int
    is_CM: bool
    is_gorenstein: bool
    is_linearly_related: Optional[bool]
    has_linear_resolution: Optional[bool]
    nearly_extremal_gorenstein: bool
    hilbert: HilbertSeries
    betti: BettiTable
    regular_sequence: List[str]
    auslander_buchsbaum: bool
    euler_ok: bool

    def to_dict(self) -> dict:
        h, d = self.hilbert.reduced()
        return {
            "nvars": self.nvars,
            "dim": self.dim,
            "depth": self.depth,
            "pd": self.pd,
            "reg": self.reg,
            "is_CM": self.is_CM,
            "is_gorenstein": self.is_gorenstein,
            "is_linearly_related": self.is_linearly_related,
            "has_linear_resolution": self.has_linear_resolution,
            "nearly_extremal_gorenstein": self.nearly_extremal_gorenstein,
            "hilbert_series": str(self.hilbert),
            "h_polynomial": list(h),
            "regular_sequence": list(self.regular_sequence),
            "auslander_buchsbaum": self.auslander_buchsbaum,
            "euler_identity": self.euler_ok,
            "betti": self.betti.to_dict(),
        }


def invariants_report(I: Ideal, j_cap: Optional[int] = None, caps: Optional[dict] = None) -> AlgebraReport:
    """Dimension, depth, pd, regularity and the CM / Gorenstein / linearity verdicts of S/I."""
    gb = _as_gb(I, caps)
    N = gb.ring.nvars
    table, work, series = _compute(gb, j_cap, True, caps)
    dim = series.dimension
    pd = table.pd
    depth = N - pd
    # depth = N - pd must sit between the verified regular sequence and dim
    ab = len(work.forms) <= depth <= dim
    is_cm = dim == depth
    gor = is_cm and table.total(pd) == 1
    h, _ = series.reduced()
    lin_rel = lin_res = None
    try:
        lin_rel = is_linearly_related(I, table)
        lin_res = has_linear_resolution(I, table)
    except (NotEquigenerated, TypeError):
        pass
    degs = [g.degree() for g in I.gens] if isinstance(I, Ideal) else []
    init_deg = min(degs) if degs else 0
    nearly = bool(gor and degs and len(h) - 1 == init_deg + 1)
    return AlgebraReport(
        nvars=N, dim=dim, depth=depth, pd=pd, reg=table.reg, is_CM=is_cm, is_gorenstein=gor,
        is_linearly_related=lin_rel, has_linear_resolution=lin_res,
        nearly_extremal_gorenstein=nearly, hilbert=series, betti=table,
        regular_sequence=work.forms, auslander_buchsbaum=ab, euler_ok=bool(table.euler_ok),
    )


# -- linear quotients ---------------------------------------------------------

@dataclass
class LinearQuotients:
    ok: bool
    r: List[int]
    degrees: List[int]
    failed_at: Optional[int] = None
    order: Tuple[Monomial, ...] = ()


def _colon_previous(prev: Sequence[Monomial], f: Monomial) -> MonomialIdeal:
    n = len(f)
    return MonomialIdeal.of(n, (tuple(max(a - b, 0) for a, b in zip(g, f)) for g in prev))


def linear_quotients_check(M: MonomialIdeal, ordering: Sequence[Monomial]) -> LinearQuotients:
    """Check that each (f_1..f_{k-1}) : f_k is generated by variables; r_k counts them."""
    ordering = tuple(ordering)
    if sorted(ordering) != sorted(M.gens):
        raise ValueError("ordering must be a permutation of the minimal generators")
    r = []
    for k, f in enumerate(ordering):
        if k == 0:
            r.append(0)
            continue
        col = _colon_previous(ordering[:k], f)
        if any(sum(g) != 1 for g in col.gens):
            return LinearQuotients(False, r, [sum(g) for g in ordering], failed_at=k + 1, order=ordering)
        r.append(len(col.gens))
    return LinearQuotients(True, r, [sum(g) for g in ordering], order=ordering)


def find_linear_quotients_order(M: MonomialIdeal, max_nodes: int = 200_000) -> Optional[LinearQuotients]:
    """Depth-first search for an ordering with linear quotients.

    Only degree-nondecreasing orders are tried: that loses nothing, and it is the
    setting in which the Betti formula of ``betti_from_linear_quotients`` applies.
    """
    gens = sorted(M.gens, key=lambda g: (sum(g), tuple(-x for x in g)))
    n = len(gens)
    dead = set()
    nodes = 0

    def ok_next(chosen, f):
        if not chosen:
            return True
        col = _colon_previous(chosen, f)
        return all(sum(g) == 1 for g in col.gens)

    def dfs(chosen, used):
        nonlocal nodes
        if len(chosen) == n:
            return list(chosen)
        if used in dead:
            return None
        nodes += 1
        if nodes > max_nodes:
            raise ResourceLimit("linear quotient search exceeded its node budget")
        low = min(sum(gens[k]) for k in range(n) if not used >> k & 1)
        for k in range(n):
            if not used >> k & 1 and sum(gens[k]) == low and ok_next(chosen, gens[k]):
                chosen.append(gens[k])
                res = dfs(chosen, used | 1 << k)
                if res is not None:
                    return res
                chosen.pop()
        dead.add(used)
        return None

    order = dfs([], 0)
    if order is None:
        return None
    return linear_quotients_check(M, order)


def betti_from_linear_quotients(r: Sequence[int], degrees: Sequence[int], nvars: int) -> BettiTable:
    """beta_{i+1,i+j}(S/M) = sum over generators of degree j of C(r_k, i); beta_{0,0} = 1."""
    entries: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for rk, dk in zip(r, degrees):
        for i in range(rk + 1):
            key = (i + 1, i + dk)
            entries[key] = entries.get(key, 0) + comb(rk, i)
    top = max(j for _, j in entries)
    return BettiTable(entries, nvars, top)
