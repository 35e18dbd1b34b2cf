# cython: language_level=3
"""Compiled elimination kernel.

Line-for-line transliteration of _elim_py: fraction-free row echelon with
per-row gcd reduction and Markowitz pivoting.  Entries stay arbitrary-
precision Python ints (exactness first); the speedup comes from removing
interpreter dispatch in the inner loops.
"""

from math import gcd as _gcd

IMPL = "compiled"


cdef dict _normalize(dict row):
    cdef object g = 0
    cdef object v, c, lead
    for v in row.values():
        g = _gcd(g, v)
    lead = min(row)
    if row[lead] < 0:
        g = -g
    if g != 1:
        for c in list(row):
            row[c] //= g
    return row


def echelon(rows, ncols):
    """Row echelon form of a sparse integer matrix; see _elim_py.echelon."""
    cdef list active = []
    cdef dict rr, r, piv, new_r, col_count
    cdef object c, v, cc, vv, pval, rv, x
    cdef Py_ssize_t i, best_i
    cdef long long cost, best_cost, rweight
    cdef object best_c
    cdef list pivot_cols = []
    cdef list ech_rows = []
    cdef list new_active

    for r0 in rows:
        rr = {}
        for c, v in (<dict> r0).items():
            if v:
                rr[c] = v
        if rr:
            active.append(_normalize(rr))

    while active:
        col_count = {}
        for r in active:
            for c in r:
                col_count[c] = col_count.get(c, 0) + 1
        best_cost = -1
        best_i = -1
        best_c = -1
        for i in range(len(active)):
            r = <dict> active[i]
            rweight = len(r) - 1
            for c in sorted(r):
                cost = rweight * (<long long> col_count[c] - 1)
                if best_cost < 0 or cost < best_cost or (
                    cost == best_cost and (i, c) < (best_i, best_c)
                ):
                    best_cost = cost
                    best_i = i
                    best_c = c
        piv = <dict> active.pop(best_i)
        pval = piv[best_c]
        new_active = []
        for r in active:
            if best_c not in r:
                new_active.append(r)
                continue
            rv = r[best_c]
            new_r = {}
            for cc, vv in r.items():
                if cc != best_c:
                    new_r[cc] = pval * vv
            for cc, vv in piv.items():
                if cc == best_c:
                    continue
                x = new_r.get(cc, 0) - rv * vv
                if x:
                    new_r[cc] = x
                elif cc in new_r:
                    del new_r[cc]
            if new_r:
                new_active.append(_normalize(new_r))
        active = new_active
        pivot_cols.append(best_c)
        ech_rows.append(piv)
    return pivot_cols, ech_rows
