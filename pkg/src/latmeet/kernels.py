"""Rank kernel selection: compiled extension when importable, pure Python otherwise.

Set ``LATMEET_PURE_PYTHON=1`` to force the fallback.
"""
import os
from collections import Counter

from ._rank_py import sparse_rank as py_sparse_rank

ext_sparse_rank = None
if not os.environ.get("LATMEET_PURE_PYTHON"):
    try:
        from ._rank_ext import sparse_rank as ext_sparse_rank
    except ImportError:  # extension not built
        ext_sparse_rank = None

BACKEND = "cython" if ext_sparse_rank is not None else "python"


def presort(rows, ncols):
    """Static pivot order: sparsest columns become the earliest pivots, sparsest rows go first.

    Rank does not depend on the order; fill-in and coefficient growth do, a lot.
    """
    count = Counter(c for r in rows for c in r)
    order = sorted(range(ncols), key=lambda c: (count[c], c))
    pos = {c: i for i, c in enumerate(order)}
    out = [{pos[c]: v for c, v in r.items()} for r in rows]
    out.sort(key=len)
    return out


def sparse_rank(rows, ncols):
    """Exact rank of an integer matrix given as a list of ``{col: int}`` rows."""
    if not rows:
        return 0
    rows = presort(rows, ncols)
    if ext_sparse_rank is not None:
        try:
            return ext_sparse_rank(rows, ncols)
        except OverflowError:
            pass
    return py_sparse_rank(rows, ncols)
