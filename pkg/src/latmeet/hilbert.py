"""Hilbert series of standard graded quotients S/I.

For a monomial ideal M the numerator K(t) of Hilb(S/M) = K(t)/(1-t)^N comes
from the pivot recursion  K(M) = K(M + (x)) + t * K(M : x)  on a variable x.
Homogeneous ideals go through the initial ideal of a Groebner basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import GroebnerBasis, Ideal, MonomialIdeal, buchberger, initial_ideal, minimalize
from .polyring import Monomial


def _padd(a: List[int], b: List[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pmul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _trim(p: List[int]) -> List[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _one_minus_t_pow(k: int) -> List[int]:
    return [(-1) ** i * comb(k, i) for i in range(k + 1)]


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^denom_power`` with integer coefficients, lowest degree first."""

    numerator: Tuple[int, ...]
    denom_power: int

    def reduced(self) -> Tuple[Tuple[int, ...], int]:
        """(h-polynomial with h(1) != 0, pole order at t = 1)."""
        num = list(self.numerator)
        d = self.denom_power
        if not num:
            return (), 0
        while d > 0 and sum(num) == 0:
            # synthetic division by (1 - t): q_i = sum_{k<=i} num_k
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = _trim(q)
            d -= 1
        return tuple(num), d

    @property
    def dimension(self) -> int:
        if not self.numerator:
            return -1
        return self.reduced()[1]

    def as_denominator(self, power: int) -> "HilbertSeries":
        h, d = self.reduced()
        if power < d:
            raise ValueError("denominator power below the pole order")
        return HilbertSeries(tuple(_pmul(list(h), _one_minus_t_pow(power - d))), power)

    def coefficient(self, d: int) -> int:
        """dim_K (S/I)_d."""
        if d < 0:
            return 0
        N = self.denom_power
        total = 0
        for i, c in enumerate(self.numerator):
            if i <= d and c:
                k = d - i
                total += c * (comb(k + N - 1, N - 1) if N > 0 else int(k == 0))
        return total

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        return self.reduced() == other.reduced()

    def __hash__(self):
        return hash(self.reduced())

    def __str__(self):
        h, d = self.reduced()
        return format_series(h, d)


def _format_poly(coeffs: Sequence[int], var: str = "t") -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        a = abs(c)
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = str(a) if not mon else (mon if a == 1 else f"{a}{mon}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


def format_series(h: Sequence[int], d: int) -> str:
    num = _format_poly(h)
    if d == 0:
        return num
    den = "(1 - t)" if d == 1 else f"(1 - t)^{d}"
    return f"({num})/{den}"


def hilbert_function(series: HilbertSeries, d: int) -> int:
    return series.coefficient(d)


def krull_dimension(series: HilbertSeries) -> int:
    return series.dimension


def multiplicity(series: HilbertSeries) -> int:
    h, _ = series.reduced()
    return sum(h)


def numerator_degree(series: HilbertSeries) -> int:
    h, _ = series.reduced()
    return len(h) - 1


# -- pivot recursion ----------------------------------------------------------

def _numerator(gens: Tuple[Monomial, ...], memo: Dict) -> List[int]:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return []
    hit = memo.get(gens)
    if hit is not None:
        return hit
    nv = len(gens[0])
    counts = [0] * nv
    pure = True
    for g in gens:
        supp = [i for i, e in enumerate(g) if e]
        if len(supp) > 1:
            pure = False
            for i in supp:
                counts[i] += 1
    if pure:
        # generators are powers of distinct variables: a complete intersection
        out = [1]
        for g in gens:
            out = _pmul(out, [1] + [0] * (sum(g) - 1) + [-1])
        memo[gens] = out
        return out
    v = max(range(nv), key=lambda i: (counts[i], -i))
    unit = tuple(int(i == v) for i in range(nv))
    added = minimalize([g for g in gens if not g[v]] + [unit])
    quot = minimalize(tuple(e - 1 if i == v and e else e for i, e in enumerate(g)) for g in gens)
    out = _padd(_numerator(added, memo), [0] + _numerator(quot, memo))
    memo[gens] = out
    return out


def hilbert_series_monomial(M: MonomialIdeal, nvars: Optional[int] = None) -> HilbertSeries:
    N = M.nvars if nvars is None else nvars
    memo: Dict = {}
    return HilbertSeries(tuple(_numerator(tuple(M.gens), memo)), N)


def hilbert_series_gb(gb: GroebnerBasis) -> HilbertSeries:
    return hilbert_series_monomial(initial_ideal(gb), gb.ring.nvars)


def hilbert_series_ideal(I: Ideal, caps: Optional[dict] = None) -> HilbertSeries:
    if not I.is_homogeneous():
        raise ValueError("Hilbert series needs a homogeneous ideal")
    if I.is_zero():
        return HilbertSeries((1,), I.ring.nvars)
    return hilbert_series_gb(buchberger(I, caps))
