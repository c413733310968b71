"""Finite posets and lattices.

Lattices are entered through their Hasse diagram (cover pairs ``a < b``);
the order relation, meet/join tables and rank function are derived and
validated on construction.  All objects are immutable after construction.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class LatticeError(ValueError):
    pass


class CycleDetected(LatticeError):
    pass


class DuplicateElement(LatticeError):
    pass


class UnknownElement(LatticeError):
    pass


class NotALattice(LatticeError):
    def __init__(self, a: str, b: str, what: str = "join"):
        super().__init__(f"{a!r} and {b!r} have no unique {what}")
        self.a, self.b, self.what = a, b, what


class NotGraded(LatticeError):
    pass


class NotFound(LatticeError):
    pass


class NotASublattice(LatticeError):
    pass


class InvalidParameter(LatticeError):
    pass


class LatticeParseError(LatticeError):
    """Malformed lattice JSON."""


NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _closure(n: int, edges: Iterable[Tuple[int, int]]) -> List[int]:
    """Down-set bitmasks (reflexive) of the order generated by ``edges``; raises on cycles."""
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in edges:
        if a == b:
            raise CycleDetected(f"self-loop at element {a}")
        succ[a].append(b)
        indeg[b] += 1
    order = []
    stack = [i for i in range(n) if indeg[i] == 0]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) != n:
        raise CycleDetected("cover relation contains a cycle")
    down = [1 << i for i in range(n)]
    for v in order:
        for w in succ[v]:
            down[w] |= down[v]
    return down


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Poset:
    """Finite poset; ``down[i]`` is the bitmask of elements ``<= i``."""

    def __init__(self, elements: Sequence[str], covers: Iterable[Tuple[str, str]] = ()):
        elements = tuple(elements)
        seen = set()
        for e in elements:
            if e in seen:
                raise DuplicateElement(e)
            seen.add(e)
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        edges = []
        for a, b in covers:
            if a not in self.index or b not in self.index:
                raise UnknownElement(f"cover ({a!r}, {b!r}) names an unknown element")
            edges.append((self.index[a], self.index[b]))
        self.down = _closure(n, edges)
        self.up = [0] * n
        for i in range(n):
            for j in _bits(self.down[i]):
                self.up[j] |= 1 << i
        cov = []
        for b in range(n):
            strict = self.down[b] & ~(1 << b)
            for a in _bits(strict):
                # a is covered by b iff nothing strictly between
                if not any(self.down[c] >> a & 1 for c in _bits(strict) if c != a):
                    cov.append((a, b))
        cov.sort()
        self.cover_idx = tuple(cov)

    def __len__(self):
        return len(self.elements)

    @property
    def covers(self) -> List[Tuple[str, str]]:
        return [(self.elements[a], self.elements[b]) for a, b in self.cover_idx]

    def leq_idx(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def leq(self, a: str, b: str) -> bool:
        return self.leq_idx(self.index[a], self.index[b])

    def leq_matrix(self) -> List[List[bool]]:
        n = len(self)
        return [[self.leq_idx(a, b) for b in range(n)] for a in range(n)]

    def order_ideals(self) -> List[int]:
        """All down-closed subsets, as bitmasks, in increasing (size, mask) order."""
        n = len(self)
        out = []
        for mask in range(1 << n):
            if all(self.down[i] & ~mask == 0 for i in _bits(mask)):
                out.append(mask)
        out.sort(key=lambda m: (bin(m).count("1"), m))
        return out

    def height(self) -> int:
        """Number of covers in a longest chain (the rank of the poset); -1 if empty."""
        n = len(self)
        if not n:
            return -1
        best = [0] * n
        for b in sorted(range(n), key=lambda i: bin(self.down[i]).count("1")):
            for a in _bits(self.down[b] & ~(1 << b)):
                best[b] = max(best[b], best[a] + 1)
        return max(best)


class Lattice:
    """Finite lattice with meet/join tables and (when graded) a rank vector."""

    def __init__(self, elements: Sequence[str], covers: Iterable[Tuple[str, str]],
                 precedence: Optional[Sequence[str]] = None, name: str = ""):
        for e in elements:
            if not isinstance(e, str) or not NAME_RE.match(e):
                raise LatticeError(f"bad element name {e!r}")
        self.poset = Poset(elements, covers)
        self.name = name
        n = len(self.poset)
        if n == 0:
            raise NotALattice("", "", "bottom (empty poset)")
        P = self.poset
        els = P.elements
        full = (1 << n) - 1
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                lower = P.down[a] & P.down[b]
                glb = [c for c in _bits(lower) if P.down[c] == lower]
                if len(glb) != 1:
                    raise NotALattice(els[a], els[b], "meet")
                upper = P.up[a] & P.up[b]
                lub = [c for c in _bits(upper) if P.up[c] == upper]
                if len(lub) != 1:
                    raise NotALattice(els[a], els[b], "join")
                meet[a][b] = meet[b][a] = glb[0]
                join[a][b] = join[b][a] = lub[0]
        self.meet_idx = tuple(tuple(r) for r in meet)
        self.join_idx = tuple(tuple(r) for r in join)
        self.bottom_idx = next(c for c in range(n) if P.up[c] == full)
        self.top_idx = next(c for c in range(n) if P.down[c] == full)
        # longest-chain rank from the bottom, then check gradedness along covers
        depth = [0] * n
        by_size = sorted(range(n), key=lambda i: bin(P.down[i]).count("1"))
        preds: Dict[int, List[int]] = {i: [] for i in range(n)}
        for a, b in P.cover_idx:
            preds[b].append(a)
        for b in by_size:
            depth[b] = max((depth[a] + 1 for a in preds[b]), default=0)
        self.longest = tuple(depth)
        graded = all(depth[b] == depth[a] + 1 for a, b in P.cover_idx)
        self.rank_vec: Optional[Tuple[int, ...]] = tuple(depth) if graded else None
        if precedence is not None:
            precedence = tuple(precedence)
            if sorted(precedence) != sorted(els):
                raise LatticeError("precedence must list every element exactly once")
        self.precedence = precedence

    # -- accessors --------------------------------------------------------
    @property
    def elements(self) -> Tuple[str, ...]:
        return self.poset.elements

    @property
    def covers(self) -> List[Tuple[str, str]]:
        return self.poset.covers

    @property
    def index(self) -> Dict[str, int]:
        return self.poset.index

    def __len__(self):
        return len(self.poset)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Lattice{label} with {len(self)} elements>"

    @property
    def bottom(self) -> str:
        return self.elements[self.bottom_idx]

    @property
    def top(self) -> str:
        return self.elements[self.top_idx]

    @property
    def is_graded(self) -> bool:
        return self.rank_vec is not None

    def rank(self, a: str) -> int:
        if self.rank_vec is None:
            raise NotGraded("lattice is not graded")
        return self.rank_vec[self.index[a]]

    def ranks(self) -> Dict[str, int]:
        if self.rank_vec is None:
            raise NotGraded("lattice is not graded")
        return dict(zip(self.elements, self.rank_vec))

    def leq(self, a: str, b: str) -> bool:
        return self.poset.leq(a, b)

    def meet(self, a: str, b: str) -> str:
        return self.elements[self.meet_idx[self.index[a]][self.index[b]]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self.join_idx[self.index[a]][self.index[b]]]

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def incomparable_pairs(self) -> List[Tuple[str, str]]:
        els = self.elements
        n = len(els)
        P = self.poset
        return [(els[a], els[b]) for a in range(n) for b in range(a + 1, n)
                if not P.leq_idx(a, b) and not P.leq_idx(b, a)]

    def interval(self, lo: str, hi: str) -> List[str]:
        P = self.poset
        mask = P.up[self.index[lo]] & P.down[self.index[hi]]
        return [self.elements[i] for i in _bits(mask)]

    def default_precedence(self) -> Tuple[str, ...]:
        """Variable precedence: decreasing rank (longest chain from bottom), ties by input order."""
        if self.precedence is not None:
            return self.precedence
        n = len(self)
        order = sorted(range(n), key=lambda i: (-self.longest[i], i))
        return tuple(self.elements[i] for i in order)

    def sublattice(self, subset: Iterable[str], name: str = "") -> "Lattice":
        """The lattice on ``subset`` with the restricted order (subset must be a sublattice)."""
        subset = set(subset)
        if not is_sublattice(self, subset):
            raise NotASublattice(f"{sorted(subset)} is not closed under meet and join")
        els = [e for e in self.elements if e in subset]
        rel = [(a, b) for a in els for b in els if a != b and self.leq(a, b)]
        prec = None
        if self.precedence is not None:
            prec = [e for e in self.precedence if e in subset]
        return Lattice(els, rel, precedence=prec, name=name)

    # -- serialisation ----------------------------------------------------
    def to_dict(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.elements == other.elements
                and self.poset.cover_idx == other.poset.cover_idx)

    def __hash__(self):
        return hash((self.elements, self.poset.cover_idx))


def build_lattice(elements: Sequence[str], covers: Iterable[Tuple[str, str]], **kw) -> Lattice:
    return Lattice(elements, covers, **kw)


def lattice_from_dict(d: dict, **kw) -> Lattice:
    if not isinstance(d, dict) or "elements" not in d or "covers" not in d:
        raise LatticeParseError('lattice JSON needs "elements" and "covers"')
    if not isinstance(d["elements"], list) or not isinstance(d["covers"], list):
        raise LatticeParseError('"elements" and "covers" must be lists')
    covers = []
    for c in d["covers"]:
        if not isinstance(c, (list, tuple)) or len(c) != 2:
            raise LatticeParseError(f"bad cover entry {c!r}")
        covers.append((c[0], c[1]))
    return Lattice(list(d["elements"]), covers, **kw)


def load_lattice(path) -> Lattice:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LatticeParseError(f"{path}: {exc}") from exc
    return lattice_from_dict(data)


def save_lattice(L: Lattice, path) -> None:
    with open(path, "w") as fh:
        fh.write(L.to_json())


# -- structural tests ---------------------------------------------------------

def is_distributive(L: Lattice) -> bool:
    M, J = L.meet_idx, L.join_idx
    n = len(L)
    return all(M[a][J[b][c]] == J[M[a][b]][M[a][c]]
               for a in range(n) for b in range(n) for c in range(b + 1, n))


def is_modular(L: Lattice) -> bool:
    M, J = L.meet_idx, L.join_idx
    P = L.poset
    n = len(L)
    for a in range(n):
        for c in _bits(P.up[a]):
            for b in range(n):
                if J[a][M[b][c]] != M[J[a][b]][c]:
                    return False
    return True


def find_pentagon(L: Lattice) -> Optional[Tuple[str, str, str, str, str]]:
    """A pentagon sublattice as (bottom, side, low, high, top), or None."""
    M, J = L.meet_idx, L.join_idx
    P = L.poset
    n = len(L)
    for lo in range(n):
        for hi in _bits(P.up[lo] & ~(1 << lo)):
            for s in range(n):
                if P.leq_idx(s, lo) or P.leq_idx(lo, s) or P.leq_idx(s, hi) or P.leq_idx(hi, s):
                    continue
                if J[lo][s] == J[hi][s] and M[lo][s] == M[hi][s]:
                    e = L.elements
                    return (e[M[lo][s]], e[s], e[lo], e[hi], e[J[lo][s]])
    return None


def find_diamond(L: Lattice) -> Optional[Tuple[str, str, str, str, str]]:
    """A diamond sublattice as (bottom, m1, m2, m3, top), or None."""
    M, J = L.meet_idx, L.join_idx
    n = len(L)
    for a, b, c in itertools.combinations(range(n), 3):
        bot = M[a][b]
        top = J[a][b]
        if bot in (a, b) or top in (a, b):
            continue
        if M[a][c] == M[b][c] == bot and J[a][c] == J[b][c] == top and c not in (bot, top):
            e = L.elements
            return (e[bot], e[a], e[b], e[c], e[top])
    return None


def rank_identity_holds(L: Lattice) -> bool:
    if L.rank_vec is None:
        raise NotGraded("rank identity needs a graded lattice")
    r = L.rank_vec
    M, J = L.meet_idx, L.join_idx
    n = len(L)
    return all(r[a] + r[b] == r[M[a][b]] + r[J[a][b]] for a in range(n) for b in range(a + 1, n))


def find_rank2_diamond_interval(L: Lattice) -> Tuple[str, str, List[str]]:
    """First interval [z, x] of rank length 2 with at least three middle elements."""
    if L.rank_vec is None:
        raise NotGraded("needs a graded lattice")
    r = L.rank_vec
    P = L.poset
    for z in range(len(L)):
        for x in _bits(P.up[z]):
            if r[x] - r[z] != 2:
                continue
            mid = _bits(P.up[z] & P.down[x] & ~(1 << z) & ~(1 << x))
            if len(mid) >= 3:
                e = L.elements
                return e[z], e[x], [e[m] for m in mid]
    raise NotFound("no rank-2 interval with three or more middle elements")


def is_sublattice(L: Lattice, subset: Iterable[str]) -> bool:
    idx = {L.index[s] for s in subset}
    if not idx:
        return False
    M, J = L.meet_idx, L.join_idx
    return all(M[a][b] in idx and J[a][b] in idx for a in idx for b in idx)


def is_induced_sublattice(L: Lattice, subset: Iterable[str]) -> bool:
    subset = set(subset)
    for s in subset:
        if s not in L.index:
            raise UnknownElement(s)
    if not is_sublattice(L, subset):
        raise NotASublattice(f"{sorted(subset)} is not closed under meet and join")
    idx = {L.index[s] for s in subset}
    M, J = L.meet_idx, L.join_idx
    n = len(L)
    for a in range(n):
        for b in range(n):
            if M[a][b] in idx and J[a][b] in idx and not (a in idx and b in idx):
                return False
    return True


@dataclass(frozen=True)
class SublatticeView:
    parent: Lattice
    subset: frozenset

    def __post_init__(self):
        if not is_sublattice(self.parent, self.subset):
            raise NotASublattice(f"{sorted(self.subset)} is not closed under meet and join")

    def is_induced(self) -> bool:
        return is_induced_sublattice(self.parent, self.subset)

    def lattice(self) -> Lattice:
        return self.parent.sublattice(self.subset)


# -- named families -----------------------------------------------------------

def chain(m: int) -> Lattice:
    """Chain c1 < c2 < ... < cm."""
    if m < 1:
        raise InvalidParameter("chain needs m >= 1")
    els = [f"c{i}" for i in range(1, m + 1)]
    return Lattice(els, list(zip(els, els[1:])), name=f"chain({m})")


def boolean(n: int) -> Lattice:
    """Boolean lattice B_n; element ``b0110`` is the subset with those indicator bits."""
    if n < 0:
        raise InvalidParameter("boolean needs n >= 0")
    masks = list(range(1 << n))
    name = lambda m: "b" + (format(m, f"0{n}b") if n else "")
    covers = [(name(m), name(m | 1 << i)) for m in masks for i in range(n) if not m >> i & 1]
    return Lattice([name(m) for m in masks], covers, name=f"B{n}")


def diamond(n: int) -> Lattice:
    """D_{n+2}: top x above y1..yn above bottom z, variable precedence x > y1 > ... > yn > z."""
    if n < 3:
        raise InvalidParameter("diamond D_{n+2} is defined here for n >= 3")
    ys = [f"y{i}" for i in range(1, n + 1)]
    els = ["x"] + ys + ["z"]
    covers = [("z", y) for y in ys] + [(y, "x") for y in ys]
    return Lattice(els, covers, precedence=els, name=f"D{n + 2}")


def pentagon() -> Lattice:
    return Lattice(list("abcde"), [("a", "b"), ("b", "e"), ("a", "c"), ("c", "d"), ("d", "e")],
                   name="pentagon")


def ladder_covers(n: int) -> List[Tuple[str, str]]:
    covers = []
    for i in range(1, n):
        covers += [(f"x{i}", f"x{i + 1}"), (f"y{i}", f"y{i + 1}"), (f"x{i + 1}", f"y{i + 1}")]
    covers.append(("x1", "y1"))
    return covers


def lk(n: int, k: int) -> Lattice:
    """L_k: the ladder x1..xn, y1..yn with an extra element z, x_k < z < y_{k+1}.

    Variable precedence is x1 > ... > xn > y1 > ... > yn > z.
    """
    if n < 2 or not 1 <= k <= n - 1:
        raise InvalidParameter("lk needs n >= 2 and 1 <= k <= n-1")
    els = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)] + ["z"]
    covers = ladder_covers(n) + [(f"x{k}", "z"), ("z", f"y{k + 1}")]
    return Lattice(els, covers, precedence=els, name=f"L_{k}(n={n})")


def ladder(n: int) -> Lattice:
    """The distributive ladder D = I(chain of n-1 + point) with the same labels as :func:`lk`."""
    if n < 1:
        raise InvalidParameter("ladder needs n >= 1")
    els = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    return Lattice(els, ladder_covers(n), precedence=els, name=f"ladder({n})")


def poset_chain_plus_point(m: int) -> Poset:
    """Disjoint sum of the chain p1 < ... < pm and an isolated point q."""
    if m < 1:
        raise InvalidParameter("chain length must be >= 1")
    els = [f"p{i}" for i in range(1, m + 1)] + ["q"]
    return Poset(els, [(f"p{i}", f"p{i + 1}") for i in range(1, m)])


def antichain(m: int) -> Poset:
    return Poset([f"p{i}" for i in range(1, m + 1)])


def birkhoff(P: Poset) -> Lattice:
    """Lattice of order ideals of ``P`` ordered by inclusion.

    The ideal {a, b} is named ``i_a_b`` (members in poset order); the empty ideal is ``i_``.
    """
    ideals = P.order_ideals()
    name = lambda m: "i_" + "_".join(P.elements[i] for i in _bits(m))
    members = set(ideals)
    covers = []
    for m in ideals:
        for i in range(len(P)):
            if not m >> i & 1 and (m | 1 << i) in members:
                covers.append((name(m), name(m | 1 << i)))
    return Lattice([name(m) for m in ideals], covers, name="I(P)")


FAMILIES = {
    "chain": chain,
    "boolean": boolean,
    "diamond": diamond,
    "lk": lk,
}
