# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact rank kernel; same algorithm as ``_rank_py`` on 128-bit integers with overflow checks."""

from libc.stdlib cimport malloc, free, realloc

cdef extern from *:
    """
    typedef __int128 wide_t;
    static inline int mul_ovf(wide_t a, wide_t b, wide_t *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    static inline int sub_ovf(wide_t a, wide_t b, wide_t *out) {
        return __builtin_sub_overflow(a, b, out);
    }
    """
    # Cython only needs an integer type here; C sees __int128
    ctypedef long long wide_t
    int mul_ovf(wide_t a, wide_t b, wide_t *out) nogil
    int sub_ovf(wide_t a, wide_t b, wide_t *out) nogil


cdef struct Row:
    int n
    int *col
    wide_t *val


cdef inline wide_t _gcd(wide_t a, wide_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void _normalize(Row *r) nogil:
    cdef wide_t g = 0
    cdef int k
    for k in range(r.n):
        g = _gcd(g, r.val[k])
        if g == 1:
            return
    if g > 1:
        for k in range(r.n):
            r.val[k] //= g


cdef int _combine(Row *r, Row *p, wide_t a, wide_t b, int *col_buf, wide_t *val_buf) nogil:
    """buf <- a*r - b*p (merge of sorted rows); returns length, or -1 on overflow."""
    cdef int i = 0, j = 0, n = 0
    cdef wide_t x, y, z
    while i < r.n or j < p.n:
        if j >= p.n or (i < r.n and r.col[i] < p.col[j]):
            if mul_ovf(a, r.val[i], &x):
                return -1
            col_buf[n] = r.col[i]
            val_buf[n] = x
            n += 1
            i += 1
        elif i >= r.n or p.col[j] < r.col[i]:
            if mul_ovf(b, p.val[j], &y):
                return -1
            col_buf[n] = p.col[j]
            val_buf[n] = -y
            n += 1
            j += 1
        else:
            if mul_ovf(a, r.val[i], &x) or mul_ovf(b, p.val[j], &y) or sub_ovf(x, y, &z):
                return -1
            if z != 0:
                col_buf[n] = r.col[i]
                val_buf[n] = z
                n += 1
            i += 1
            j += 1
    return n


def sparse_rank(rows, int ncols):
    """Exact rank of an integer matrix given as a list of ``{col: int}`` rows.

    Raises OverflowError when an intermediate value leaves int64.
    """
    cdef int nrows = len(rows)
    cdef int *pivot_of = <int *> malloc(max(ncols, 1) * sizeof(int))
    cdef Row *pivots = <Row *> malloc(max(nrows, 1) * sizeof(Row))
    cdef int npiv = 0
    cdef int k, c, n, length, cap = 16
    cdef int *col_buf = <int *> malloc(cap * sizeof(int))
    cdef wide_t *val_buf = <wide_t *> malloc(cap * sizeof(wide_t))
    cdef Row cur
    cdef Row *p
    cdef wide_t a, b, g
    cdef int overflow = 0
    cur.col = NULL
    cur.val = NULL
    for k in range(ncols):
        pivot_of[k] = -1
    try:
        for row in rows:
            items = sorted((<dict> row).items())
            n = len(items)
            cur.n = 0
            cur.col = <int *> malloc(max(n, 1) * sizeof(int))
            cur.val = <wide_t *> malloc(max(n, 1) * sizeof(wide_t))
            for c, v in items:
                if v:
                    if c < 0 or c >= ncols:
                        raise IndexError("column index out of range")
                    if v > 9223372036854775807 or v < -9223372036854775807:
                        raise OverflowError("entry exceeds 64 bits")
                    cur.col[cur.n] = c
                    cur.val[cur.n] = v
                    cur.n += 1
            while cur.n > 0:
                c = cur.col[0]
                if pivot_of[c] < 0:
                    _normalize(&cur)
                    pivots[npiv] = cur
                    pivot_of[c] = npiv
                    npiv += 1
                    cur.col = NULL
                    cur.val = NULL
                    break
                p = &pivots[pivot_of[c]]
                a = p.val[0]
                b = cur.val[0]
                g = _gcd(a, b)
                a //= g
                b //= g
                length = cur.n + p.n
                if length > cap:
                    cap = 2 * length
                    col_buf = <int *> realloc(col_buf, cap * sizeof(int))
                    val_buf = <wide_t *> realloc(val_buf, cap * sizeof(wide_t))
                n = _combine(&cur, p, a, b, col_buf, val_buf)
                if n < 0:
                    overflow = 1
                    break
                if n > cur.n:
                    cur.col = <int *> realloc(cur.col, n * sizeof(int))
                    cur.val = <wide_t *> realloc(cur.val, n * sizeof(wide_t))
                for k in range(n):
                    cur.col[k] = col_buf[k]
                    cur.val[k] = val_buf[k]
                cur.n = n
                _normalize(&cur)
            free(cur.col)
            free(cur.val)
            cur.col = NULL
            cur.val = NULL
            if overflow:
                raise OverflowError("128-bit overflow in fraction-free elimination")
        return npiv
    finally:
        free(cur.col)
        free(cur.val)
        for k in range(npiv):
            free(pivots[k].col)
            free(pivots[k].val)
        free(pivots)
        free(pivot_of)
        free(col_buf)
        free(val_buf)
