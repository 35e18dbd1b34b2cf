"""Poincare-Lefschetz duality with Tate twist, at the level of tables.

H^k of the open complement F_G(X) is dual to H^(2N-k) of the compact pair
(X^n, D_G), N = n.d, and the twist reflects weight and Hodge type through
N.  The transform is a pure reflection of table indices:

    (m, w, p, q)  |->  (2N - m, 2N - w, N - p, N - q)

applied entrywise; the twist convention is validated downstream by the
motivic oracle, not assumed.
"""

from __future__ import annotations

from .tables import OPEN, RELATIVE, HodgeTable


def lefschetz_dual(table: HodgeTable) -> HodgeTable:
    """Reflect a relative table into the open-variety table (and back:
    the transform is an involution, flipping the kind flag each time)."""
    big_n = table.big_n
    for (m, _, _, _) in table.entries:
        if not 0 <= m <= 2 * big_n:
            raise ValueError(f"entry degree {m} outside [0, {2 * big_n}]")
    kind = OPEN if table.kind == RELATIVE else RELATIVE
    out = HodgeTable(kind, table.n, big_n, meta=dict(table.meta))
    for (m, w, p, q), dim in table.entries.items():
        out.add(2 * big_n - m, 2 * big_n - w, big_n - p, big_n - q, dim)
    return out
