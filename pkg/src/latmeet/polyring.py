"""Exact multivariate polynomials over the rationals.

Monomials are plain tuples of non-negative exponents indexed by the ring's
variable list.  A :class:`Ring` fixes the variables and the monomial order;
every :class:`Polynomial` belongs to exactly one ring.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]

ORDER_KINDS = ("lex", "deglex", "degrevlex", "elim")


class VarSetMismatch(ValueError):
    pass


class ParseError(ValueError):
    pass


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x < y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _degrevlex_key(e: Monomial) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


class MonomialOrder:
    """A global monomial order, realised as a sort key (bigger key = bigger monomial).

    ``elim`` is the product of two degrevlex orders on the first ``block``
    variables and on the rest; it eliminates the first block.
    """

    def __init__(self, kind: str, nvars: int, block: int = 0):
        if kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and not 0 < block <= nvars:
            raise ValueError("elim order needs 0 < block <= nvars")
        self.kind = kind
        self.nvars = nvars
        self.block = block if kind == "elim" else 0
        self.key: Callable[[Monomial], tuple] = lru_cache(maxsize=None)(self._make_key())

    def _make_key(self):
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "deglex":
            return lambda e: (sum(e),) + e
        if self.kind == "degrevlex":
            return _degrevlex_key
        k = self.block
        return lambda e: (_degrevlex_key(e[:k]), _degrevlex_key(e[k:]))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.nvars == other.nvars and self.block == other.block)

    def __hash__(self):
        return hash((self.kind, self.nvars, self.block))

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder('elim', {self.nvars}, block={self.block})"
        return f"MonomialOrder({self.kind!r}, {self.nvars})"


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Ring:
    """Polynomial ring Q[names] with a monomial order; first name is the largest variable."""

    def __init__(self, names: Sequence[str], order: str = "degrevlex", block: int = 0):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self.nvars = len(names)
        self.order = MonomialOrder(order, len(names), block)
        self.index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names and self.order == other.order

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return f"Ring({list(self.names)!r}, {self.order.kind!r})"

    def with_order(self, order: str, block: int = 0) -> "Ring":
        return Ring(self.names, order, block)

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.one_monomial: Fraction(1)})

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self.one_monomial: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> List["Polynomial"]:
        return [self.var(n) for n in self.names]

    def monomial(self, powers: Dict[str, int]) -> Monomial:
        e = [0] * self.nvars
        for n, p in powers.items():
            e[self.index[n]] += p
        return tuple(e)

    def from_terms(self, terms: Iterable[Tuple[object, Monomial]]) -> "Polynomial":
        d: Dict[Monomial, Fraction] = {}
        for c, m in terms:
            c = Fraction(c)
            v = d.get(m, 0) + c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial(self, d)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for n, e in zip(self.names, m):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"


class Polynomial:
    """Immutable polynomial in canonical form (no zero coefficients)."""

    __slots__ = ("ring", "terms", "_sorted")

    def __init__(self, ring: Ring, terms: Dict[Monomial, Fraction]):
        self.ring = ring
        self.terms = terms
        self._sorted: Optional[List[Monomial]] = None

    # -- structure -------------------------------------------------------
    def monomials(self) -> List[Monomial]:
        """Support in strictly decreasing order."""
        if self._sorted is None:
            self._sorted = sorted(self.terms, key=self.ring.order.key, reverse=True)
        return self._sorted

    def term_list(self) -> List[Tuple[Fraction, Monomial]]:
        return [(self.terms[m], m) for m in self.monomials()]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def lm(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._sorted is not None:
            return self._sorted[0]
        return max(self.terms, key=self.ring.order.key)

    @property
    def lc(self) -> Fraction:
        return self.terms[self.lm]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def support_vars(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc
        if c == 1:
            return self
        return Polynomial(self.ring, {m: v / c for m, v in self.terms.items()})

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise VarSetMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for m, c in other.terms.items():
            v = d.get(m, 0) + c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, c, mono: Monomial) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = d.get(m, 0) + c1 * c2
                if v:
                    d[m] = v
                else:
                    d.pop(m, None)
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def map_to(self, ring: Ring, perm: Sequence[int]) -> "Polynomial":
        """Re-embed into ``ring``: old variable ``i`` becomes new variable ``perm[i]``."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    e[perm[i]] += x
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (c, m) in enumerate(p.term_list()):
        neg = c < 0
        a = -c if neg else c
        ms = p.ring.monomial_str(m)
        if ms == "1":
            body = str(a)
        elif a == 1:
            body = ms
        else:
            body = f"{a}*{ms}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-])|(\()|(\)))")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse sums of products like ``3*x*y1^2*z - 1/2``; parentheses allowed."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastindex
        tokens.append((kind, m.group(kind)))
    tokens.append((0, None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def expr():
        sign = 1
        if peek()[0] == 5:
            sign = -1 if take()[1] == "-" else 1
        acc = term().scale(sign)
        while peek()[0] == 5:
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek()[0] == 4:
            take()
            acc = acc * factor()
        return acc

    def factor():
        base = atom()
        if peek()[0] == 3:
            take()
            k, v = take()
            if k != 1 or "/" in v:
                raise ParseError("exponent must be a non-negative integer")
            base = base ** int(v)
        return base

    def atom():
        k, v = take()
        if k == 1:
            return ring.const(Fraction(v))
        if k == 2:
            if v not in ring.index:
                raise ParseError(f"unknown variable {v!r}")
            return ring.var(v)
        if k == 6:
            e = expr()
            if take()[0] != 7:
                raise ParseError("missing ')'")
            return e
        if k == 5 and v == "-":
            return -atom()
        raise ParseError(f"unexpected token {v!r}")

    if tokens[0][0] == 0:
        raise ParseError("empty polynomial")
    result = expr()
    if peek()[0] != 0:
        raise ParseError(f"trailing input near token {peek()[1]!r}")
    return result


def divide(f: Polynomial, divisors: Sequence[Polynomial]) -> Tuple[List[Polynomial], Polynomial]:
    """Multivariate division: ``f = sum(q_i * g_i) + r`` with no term of ``r``
    divisible by any leading monomial; divisors tried in the given order."""
    for g in divisors:
        f._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    key = ring.order.key
    lead = [(g.lm, g.lc) for g in divisors]
    quots: List[Dict[Monomial, Fraction]] = [{} for _ in divisors]
    p = dict(f.terms)
    rem: Dict[Monomial, Fraction] = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for k, (lm, lc) in enumerate(lead):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                a = c / lc
                quots[k][q] = quots[k].get(q, 0) + a
                for gm, gc in divisors[k].terms.items():
                    t = mono_mul(gm, q)
                    v = p.get(t, 0) - a * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return [Polynomial(ring, q) for q in quots], Polynomial(ring, rem)
