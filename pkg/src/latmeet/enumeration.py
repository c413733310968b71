"""Finite lattices up to isomorphism, by size.

A lattice with n >= 2 elements is a poset Q on n - 2 elements with a new bottom
and top adjoined. Posets are grown one maximal element at a time (every poset
arises this way), deduplicated by a canonical form, and kept when the bounded
poset is a lattice.
"""
import itertools
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from .lattice import Lattice, LatticeError, NotALattice

MAX_SIZE = 8

# a poset on m elements is a tuple of down-set bitmasks (strict), elements 0..m-1
Poset = Tuple[int, ...]


class SizeLimitExceeded(LatticeError):
    pass


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _up_sets(down: Poset) -> List[int]:
    up = [0] * len(down)
    for b, d in enumerate(down):
        for a in _bits(d):
            up[a] |= 1 << b
    return up


def _relabel(down: Poset, perm: List[int]) -> Poset:
    """Poset with element perm[i] renamed to i."""
    where = {old: new for new, old in enumerate(perm)}
    return tuple(sum(1 << where[a] for a in _bits(down[old])) for old in perm)


def _classes(down: Poset) -> List[List[int]]:
    """Ordered partition of the elements by iterated neighbourhood refinement."""
    m = len(down)
    up = _up_sets(down)
    colour = [(bin(down[i]).count("1"), bin(up[i]).count("1")) for i in range(m)]
    while True:
        sig = [(colour[i],
                tuple(sorted(colour[a] for a in _bits(down[i]))),
                tuple(sorted(colour[b] for b in _bits(up[i])))) for i in range(m)]
        ranks = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    groups: Dict[int, List[int]] = {}
    for i in range(m):
        groups.setdefault(colour[i], []).append(i)
    return [groups[c] for c in sorted(groups)]


def canonical_form(down: Poset) -> Poset:
    """Lexicographically least relabelling among those respecting the refinement classes."""
    classes = _classes(down)
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [i for part in choice for i in part]
        cand = _relabel(down, perm)
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def _order_ideals(down: Poset) -> List[int]:
    m = len(down)
    return [mask for mask in range(1 << m)
            if all(down[a] & ~mask == 0 for a in _bits(mask))]


@lru_cache(maxsize=None)
def posets(m: int) -> Tuple[Poset, ...]:
    """One canonical representative per isomorphism class of posets on m elements."""
    if m == 0:
        return ((),)
    seen = set()
    for P in posets(m - 1):
        for ideal in _order_ideals(P):
            seen.add(canonical_form(P + (ideal,)))
    return tuple(sorted(seen))


def _bounded(down: Poset) -> Tuple[List[str], List[Tuple[str, str]]]:
    m = len(down)
    names = ["e0"] + [f"e{i + 1}" for i in range(m)] + [f"e{m + 1}"]
    rel = []
    for b in range(m):
        for a in _bits(down[b]):
            rel.append((names[a + 1], names[b + 1]))
        rel.append((names[0], names[b + 1]))
        rel.append((names[b + 1], names[m + 1]))
    if m == 0:
        rel.append((names[0], names[1]))
    return names, rel


def _linear_extension(down: Poset) -> Poset:
    m = len(down)
    order = sorted(range(m), key=lambda i: (bin(down[i]).count("1"), i))
    done, out = 0, []
    while len(out) < m:
        nxt = next(i for i in order if not done >> i & 1 and down[i] & ~done == 0)
        out.append(nxt)
        done |= 1 << nxt
    return _relabel(down, out)


def lattices_of_size(n: int) -> List[Lattice]:
    """All lattices with exactly n elements, one per isomorphism class, in a fixed order."""
    if n > MAX_SIZE:
        raise SizeLimitExceeded(f"enumeration is limited to {MAX_SIZE} elements")
    if n < 1:
        return []
    if n == 1:
        return [Lattice(["e0"], [], name="L1_1")]
    out = []
    for P in posets(n - 2):
        names, rel = _bounded(_linear_extension(P))
        try:
            L = Lattice(names, rel)
        except NotALattice:
            continue
        out.append(L)
    for k, L in enumerate(out, 1):
        L.name = f"L{n}_{k}"
    return out


def enumerate_lattices(max_size: int) -> Iterator[Lattice]:
    """Every lattice with at most ``max_size`` elements up to isomorphism, smallest first."""
    if max_size > MAX_SIZE:
        raise SizeLimitExceeded(f"enumeration is limited to {MAX_SIZE} elements")
    for n in range(1, max_size + 1):
        yield from lattices_of_size(n)


# -- independent slow oracle ----------------------------------------------------

def _naive_is_lattice(n: int, leq) -> bool:
    for a in range(n):
        for b in range(n):
            ub = [c for c in range(n) if leq[a][c] and leq[b][c]]
            if not [c for c in ub if all(leq[c][d] for d in ub)]:
                return False
            lb = [c for c in range(n) if leq[c][a] and leq[c][b]]
            if not [c for c in lb if all(leq[d][c] for d in lb)]:
                return False
    return True


def naive_lattice_count(n: int) -> int:
    """Lattices on n elements up to isomorphism by brute force over naturally labelled
    relations and all n! relabellings. Only practical for n <= 7."""
    if n <= 2:
        return 1 if n >= 1 else 0
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    forms = set()
    perms = list(itertools.permutations(range(n)))
    for mask in range(1 << len(pairs)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                leq[i][j] = True
        if not all(not (leq[i][j] and leq[j][k]) or leq[i][k]
                   for i in range(n) for j in range(n) for k in range(n)):
            continue
        if not _naive_is_lattice(n, leq):
            continue
        rel = frozenset((i, j) for i in range(n) for j in range(n) if i != j and leq[i][j])
        forms.add(min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in perms))
    return len(forms)
