"""Pure-Python exact rank of sparse integer matrices (fallback kernel)."""
from math import gcd


def _content_normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def sparse_rank(rows, ncols=None):
    """Rank over Q of an integer matrix given as an iterable of ``{col: value}`` dicts.

    Fraction-free elimination: a row is reduced by ``r <- p*r - a*pivot_row`` and
    divided by its content, so entries stay integral and small.
    """
    pivots = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = _content_normalize(r)
                break
            p = prow[c]
            a = r[c]
            g = gcd(p, a)
            p //= g
            a //= g
            out = {}
            for k, v in r.items():
                out[k] = v * p
            for k, v in prow.items():
                w = out.get(k, 0) - a * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
            r = _content_normalize(out)
    return len(pivots)
