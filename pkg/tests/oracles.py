"""Independent reference computations used only by the tests.

Each one reaches its answer by a different route from the library code it checks.
"""
import itertools
import random
from fractions import Fraction

import sympy

from latmeet.betti import reduce_regular_sequence
from latmeet.groebner import Ideal, buchberger, initial_ideal


def fraction_rank(rows, ncols):
    """Rank by plain Gauss-Jordan over Q on a dense copy."""
    M = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank = 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def sympy_reduced_gb(ideal):
    """Reduced Groebner basis from sympy, as sorted strings of monic polynomials in our ring."""
    R = ideal.ring
    syms = sympy.symbols(list(R.names))
    order = {"degrevlex": "grevlex", "lex": "lex", "deglex": "grlex"}[R.order.kind]
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(R.names, syms)))
             for g in ideal.gens]
    G = sympy.groebner(exprs, *syms, order=order)
    out = []
    for g in G.exprs:
        p = R.parse(str(sympy.expand(g)).replace("**", "^"))
        out.append(str(p.monic()))
    return sorted(out)


def standard_count(M, nvars, d):
    """Number of degree-d monomials outside the monomial ideal M, by listing them."""
    count = 0
    for c in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in c:
            e[v] += 1
        if not M.contains(tuple(e)):
            count += 1
    return count


def gin_regularity(ideal, seed=1):
    """reg(S/I) from the generic initial ideal.

    After a random change of coordinates the degrevlex initial ideal is strongly
    stable, and then reg(I) is its largest generator degree. Returns (reg of S/I,
    strongly stable flag); the flag guards against an unlucky change.
    """
    work = reduce_regular_sequence(buchberger(ideal))
    R = work.gb.ring
    N = R.nvars
    rng = random.Random(seed)
    images = []
    for i in range(N):
        p = R.var(R.names[i])
        for j in range(N):
            if j != i:
                p = p + R.var(R.names[j]).scale(rng.randint(-2, 2))
        images.append(p)

    def sub(f):
        out = R.zero()
        for m, c in f.terms.items():
            t = R.const(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    t = t * images[i]
            out = out + t
        return out

    M = initial_ideal(buchberger(Ideal(R, [sub(g) for g in work.gb.basis])))
    stable = True
    for g in M.gens:
        for j in range(N):
            if g[j]:
                for i in range(j):
                    h = list(g)
                    h[j] -= 1
                    h[i] += 1
                    stable = stable and M.contains(tuple(h))
    return max(sum(g) for g in M.gens) - 1, stable
