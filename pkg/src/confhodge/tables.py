"""Hodge tables: dimensions indexed by (degree, weight, Hodge type).

The table is the engine's output format for both the relative pair
(X^n, D_G) and the open complement F_G(X).  Entries with dimension zero
are never materialised.
"""

from __future__ import annotations

RELATIVE = "relative"
OPEN = "open"


class HodgeTable:
    """Sparse map (m, w, p, q) -> dimension, plus provenance metadata."""

    def __init__(self, kind: str, n: int, big_n: int, entries=None, meta=None):
        if kind not in (RELATIVE, OPEN):
            raise ValueError(f"unknown table kind {kind!r}")
        self.kind = kind
        self.n = n
        self.big_n = big_n  # n * complex_dim, the ambient complex dimension
        self.entries: dict[tuple[int, int, int, int], int] = {}
        for key, dim in (entries or {}).items():
            self.add(*key, dim)
        self.meta = dict(meta or {})

    def add(self, m, w, p, q, dim):
        if dim < 0:
            raise ValueError("negative dimension")
        if dim == 0:
            return
        key = (m, w, p, q)
        self.entries[key] = self.entries.get(key, 0) + dim

    def rows(self) -> list[list[int]]:
        """Sorted [m, w, p, q, dim] rows."""
        return [[*key, dim] for key, dim in sorted(self.entries.items())]

    def betti(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (m, _, _, _), dim in self.entries.items():
            out[m] = out.get(m, 0) + dim
        return out

    def same_entries(self, other: "HodgeTable") -> bool:
        return self.entries == other.entries

    def diff(self, other: "HodgeTable") -> list[str]:
        """Human-readable entry-by-entry difference (empty if equal)."""
        out = []
        for key in sorted(set(self.entries) | set(other.entries)):
            a = self.entries.get(key, 0)
            b = other.entries.get(key, 0)
            if a != b:
                out.append(f"at (m,w,p,q)={key}: {a} vs {b}")
        return out

    # -- invariant checks ----------------------------------------------------

    def purity_violations(self) -> list[str]:
        """Every entry must satisfy p + q = w."""
        return [
            f"p+q != w at {key}"
            for key in sorted(self.entries)
            if key[2] + key[3] != key[1]
        ]

    def hodge_symmetry_violations(self) -> list[str]:
        out = []
        for (m, w, p, q), dim in sorted(self.entries.items()):
            if self.entries.get((m, w, q, p), 0) != dim:
                out.append(f"h^({p},{q}) != h^({q},{p}) at m={m}, w={w}")
        return out

    def relative_bound_violations(self) -> list[str]:
        """Relative tables: 0 <= w <= m <= 2N."""
        out = []
        for (m, w, _, _) in sorted(self.entries):
            if not 0 <= w <= m <= 2 * self.big_n:
                out.append(f"weight bound 0 <= w <= m <= 2N violated at (m,w)=({m},{w})")
        return out

    def open_bound_violations(self) -> list[str]:
        """Open (smooth-variety) tables: m <= w <= 2m, and a single
        (0,0,0,0):1 entry in degree zero.  The connectedness clause only
        applies in positive dimension (d = 0 gives an empty complement as
        soon as one diagonal is removed)."""
        out = []
        for (m, w, _, _) in sorted(self.entries):
            if not m <= w <= 2 * m:
                out.append(f"weight bound m <= w <= 2m violated at (m,w)=({m},{w})")
        if self.big_n >= self.n:  # complex dimension >= 1
            degree0 = {k: v for k, v in self.entries.items() if k[0] == 0}
            if degree0 != {(0, 0, 0, 0): 1}:
                out.append(f"degree-0 entries {degree0} != {{(0,0,0,0): 1}}")
        return out

    def e_polynomial(self):
        """Signed Hodge generating polynomial sum (-1)^m dim u^p v^q,
        as a {(p, q): int} dict."""
        out: dict[tuple[int, int], int] = {}
        for (m, _, p, q), dim in self.entries.items():
            c = out.get((p, q), 0) + (-dim if m % 2 else dim)
            if c:
                out[(p, q)] = c
            elif (p, q) in out:
                del out[(p, q)]
        return out

    def __eq__(self, other):
        return (
            isinstance(other, HodgeTable)
            and self.kind == other.kind
            and self.n == other.n
            and self.big_n == other.big_n
            and self.entries == other.entries
        )

    def __repr__(self):
        return (
            f"HodgeTable({self.kind}, n={self.n}, N={self.big_n}, "
            f"{len(self.entries)} entries)"
        )
