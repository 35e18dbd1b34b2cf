"""Exact sparse linear algebra over the rationals.

Rank, kernel bases and cohomology dimensions reduce to a single hot
primitive: fraction-free integer row echelon (Bareiss-style cross
multiplication with per-row gcd reduction, Markowitz pivoting,
deterministic tie-breaking).  That primitive has two interchangeable
implementations — a compiled Cython kernel and a pure-Python fallback —
selected once at import time.  Set CONFHODGE_PURE=1 to force the fallback.

No floating point, no modular shortcuts: every result is exact.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd

from .errors import CompositionError, DegeneratePairingError

if os.environ.get("CONFHODGE_PURE"):
    from . import _elim_py as _elim_mod
else:
    try:
        from . import _elim as _elim_mod  # type: ignore[attr-defined]
    except ImportError:
        from . import _elim_py as _elim_mod

KERNEL_IMPL: str = _elim_mod.IMPL
_echelon = _elim_mod.echelon


class RationalMatrix:
    """Sparse matrix with exact rational entries.

    Rows index the target, columns the source, so a linear map V -> W is
    a (dim W x dim V) matrix and vectors are applied on the right.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        # rows: dict[row -> dict[col -> Fraction]], zero rows omitted
        self.rows: dict[int, dict[int, Fraction]] = {}
        if rows:
            for r, row in rows.items():
                clean = {c: Fraction(v) for c, v in row.items() if v}
                if clean:
                    self.rows[r] = clean

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        """entries: iterable of (row, col, value); repeated positions add."""
        rows: dict[int, dict[int, Fraction]] = {}
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ValueError(f"entry ({r},{c}) out of range")
            row = rows.setdefault(r, {})
            x = row.get(c, Fraction(0)) + Fraction(v)
            if x:
                row[c] = x
            elif c in row:
                del row[c]
        return cls(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, data):
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls.from_entries(
            nrows, ncols,
            ((r, c, v) for r, row in enumerate(data) for c, v in enumerate(row) if v),
        )

    def entry(self, r: int, c: int) -> Fraction:
        return self.rows.get(r, {}).get(c, Fraction(0))

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def transpose(self) -> "RationalMatrix":
        rows: dict[int, dict[int, Fraction]] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return RationalMatrix(self.ncols, self.nrows, rows)

    def apply(self, vec) -> list[Fraction]:
        """Matrix-vector product; vec has length ncols."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.nrows
        for r, row in self.rows.items():
            out[r] = sum((v * vec[c] for c, v in row.items()), Fraction(0))
        return out

    def compose(self, other: "RationalMatrix") -> "RationalMatrix":
        """self . other (apply other first)."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in composition")
        rows: dict[int, dict[int, Fraction]] = {}
        for r, row in self.rows.items():
            acc: dict[int, Fraction] = {}
            for k, v in row.items():
                mid = other.rows.get(k)
                if not mid:
                    continue
                for c, w in mid.items():
                    x = acc.get(c, Fraction(0)) + v * w
                    if x:
                        acc[c] = x
                    elif c in acc:
                        del acc[c]
            if acc:
                rows[r] = acc
        return RationalMatrix(self.nrows, other.ncols, rows)

    def is_zero(self) -> bool:
        return not self.rows

    def int_rows(self) -> list[dict[int, int]]:
        """Rows scaled to integers (least common denominator per row)."""
        out = []
        for r in sorted(self.rows):
            row = self.rows[r]
            den = 1
            for v in row.values():
                den = den * v.denominator // gcd(den, v.denominator)
            out.append({c: int(v * den) for c, v in sorted(row.items())})
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def rank(m: RationalMatrix) -> int:
    pivots, _ = _echelon(m.int_rows(), m.ncols)
    return len(pivots)


def kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the null space, one vector per free column.

    The free column's coordinate is normalised to 1; with the deterministic
    elimination this makes the basis reproducible across kernels.
    """
    pivot_cols, ech_rows = _echelon(m.int_rows(), m.ncols)
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        x: dict[int, Fraction] = {free: Fraction(1)}
        # ech_rows[k] has zeros at pivot_cols[j] for j < k, so reverse
        # elimination order is a valid back-substitution order.
        for k in range(len(ech_rows) - 1, -1, -1):
            row = ech_rows[k]
            pc = pivot_cols[k]
            s = Fraction(0)
            for c, v in row.items():
                if c != pc and c in x:
                    s += v * x[c]
            if s:
                x[pc] = -s / row[pc]
        basis.append(tuple(x.get(c, Fraction(0)) for c in range(m.ncols)))
    return basis


def cohomology_dim(d_in: RationalMatrix, d_out: RationalMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for a two-term composition at V:
    U --d_in--> V --d_out--> W.  Checks d_out . d_in = 0 exactly."""
    if d_in.nrows != d_out.ncols:
        raise ValueError("d_in target and d_out source dimensions differ")
    if not d_out.compose(d_in).is_zero():
        raise CompositionError("d_out . d_in != 0: differential is inconsistent")
    return d_in.nrows - rank(d_out) - rank(d_in)


def solve_unique(a: RationalMatrix, b) -> list[Fraction]:
    """Solve a x = b when the solution exists and is unique.

    Built on the kernel of the augmented matrix [a | -b]: a unique solution
    corresponds to a one-dimensional kernel with nonzero last coordinate.
    Raises DegeneratePairingError otherwise.
    """
    if len(b) != a.nrows:
        raise ValueError("right-hand side length mismatch")
    rows = {r: dict(row) for r, row in a.rows.items()}
    for r, v in enumerate(b):
        if v:
            rows.setdefault(r, {})[a.ncols] = -Fraction(v)
    aug = RationalMatrix(a.nrows, a.ncols + 1, rows)
    ker = kernel_basis(aug)
    if len(ker) != 1 or ker[0][a.ncols] == 0:
        raise DegeneratePairingError(
            "linear system has no unique solution (singular matrix)"
        )
    t = ker[0][a.ncols]
    return [v / t for v in ker[0][: a.ncols]]


class RowSpace:
    """Incrementally built row space with exact membership tests.

    Independent of the batch echelon kernel (plain integer reduction in
    pivot order); used for quotient bookkeeping and as an internal
    cross-check of the elimination results.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict[int, int]] = {}  # pivot col -> reduced row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        while row:
            p = min(row)
            piv = self._rows.get(p)
            if piv is None:
                return row
            a = row[p]
            b = piv[p]
            new: dict[int, int] = {}
            for c, v in row.items():
                if c != p:
                    new[c] = b * v
            for c, v in piv.items():
                if c == p:
                    continue
                x = new.get(c, 0) - a * v
                if x:
                    new[c] = x
                elif c in new:
                    del new[c]
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    for c in new:
                        new[c] //= g
            row = new
        return row

    def add(self, vec) -> bool:
        """Add a vector (sequence or sparse dict of rationals); True if it
        enlarged the space."""
        row = _int_row(vec, self.ncols)
        row = self._reduce(row)
        if not row:
            return False
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if row[min(row)] < 0:
            g = -g
        if g != 1:
            for c in list(row):
                row[c] //= g
        self._rows[min(row)] = row
        return True

    def contains(self, vec) -> bool:
        row = _int_row(vec, self.ncols)
        return not self._reduce(row)


def _int_row(vec, ncols: int) -> dict[int, int]:
    """Clear denominators of a rational vector given as a sequence or a
    sparse {col: value} dict."""
    if isinstance(vec, dict):
        items = [(c, Fraction(v)) for c, v in vec.items() if v]
    else:
        if len(vec) != ncols:
            raise ValueError("vector length mismatch")
        items = [(c, Fraction(v)) for c, v in enumerate(vec) if v]
    den = 1
    for _, v in items:
        den = den * v.denominator // gcd(den, v.denominator)
    return {c: int(v * den) for c, v in sorted(items)}
