"""Pure-Python elimination kernel.

Fraction-free (Bareiss-style cross-multiplication) row echelon over the
integers with per-row gcd reduction and Markowitz pivot selection.  The
compiled kernel in _elim.pyx implements the identical algorithm; both must
produce byte-identical output, which the test suite checks.
"""

from math import gcd

IMPL = "pure-python"


def _normalize(row):
    """Divide a row dict by the gcd of its values; make the minimum-column
    entry positive.  Mutates and returns the row."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
    lead = min(row)
    if row[lead] < 0:
        g = -g
    if g != 1:
        for c in list(row):
            row[c] //= g
    return row


def echelon(rows, ncols):
    """Row echelon form of a sparse integer matrix.

    rows: list of {col: int} dicts with nonzero integer values (not
    mutated).  Returns (pivot_cols, ech_rows) in elimination order:
    ech_rows[k] has a nonzero entry at pivot_cols[k] and zero entries at
    pivot_cols[j] for every j < k.  The rank is len(pivot_cols).
    """
    active = []
    for r in rows:
        rr = {c: v for c, v in r.items() if v}
        if rr:
            active.append(_normalize(rr))
    pivot_cols = []
    ech_rows = []
    while active:
        col_count = {}
        for r in active:
            for c in r:
                col_count[c] = col_count.get(c, 0) + 1
        best_cost = -1
        best_i = -1
        best_c = -1
        for i, r in enumerate(active):
            rweight = len(r) - 1
            for c in sorted(r):
                cost = rweight * (col_count[c] - 1)
                if best_cost < 0 or cost < best_cost or (
                    cost == best_cost and (i, c) < (best_i, best_c)
                ):
                    best_cost = cost
                    best_i = i
                    best_c = c
        piv = active.pop(best_i)
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
