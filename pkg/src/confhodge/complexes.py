"""The Cech-style double complex of a diagonal arrangement.

Column i collects one tensor power B^(x c(J)) per edge subset J of size i,
c(J) the number of connected components of J.  The horizontal differential
delta restricts along inclusions of strata: identity on factors, or a merge
of two factors when the added edge joins two components, with the
alternating Cech sign.  The vertical differential d' is the tensor-power
extension of the algebra differential, twisted by (-1)^i on column i; it
vanishes identically for an honest cohomology ring.

With d' = 0 the total complex splits over the inner degree t, and the
relative cohomology of the pair (X^n, D_G) is read off row by row: a class
in column i of inner degree t sits in degree m = i + t and weight w = t,
with the Hodge type carried along unchanged.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import arrangement
from .algebra import HodgeAlgebra, Word, all_words, merge_word, word_differential
from .errors import ConsistencyError, ValidationError
from .linalg import RationalMatrix, cohomology_dim, kernel_basis, rank
from .tables import RELATIVE, HodgeTable

BasisElem = tuple[int, Word]  # (edge-subset mask, tensor word)


def _column_sign(i: int) -> int:
    """Sign twisting the vertical differential on column i."""
    return -1 if i % 2 else 1


class DoubleComplex:
    """Assembled double complex for one algebra and one diagonal graph.

    Basis elements are (mask, word) pairs ordered by (|mask|, mask-as-
    subset lex, word lex); blocks group them by (column, inner degree,
    Hodge type), which every differential component preserves apart from
    the graded shift.
    """

    def __init__(self, algebra: HodgeAlgebra, graph: arrangement.DiagonalGraph,
                 sign_fn=None):
        algebra.require_ring_valid()
        self.algebra = algebra
        self.graph = graph
        self.sign_fn = sign_fn or arrangement.cech_sign
        self.parts: dict[int, tuple[tuple[int, ...], ...]] = {}
        self.blocks: dict[tuple[int, int, int, int], list[BasisElem]] = {}
        self.position: dict[BasisElem, int] = {}
        for mask, part in arrangement.enumerate_strata(graph):
            self.parts[mask] = part
            i = mask.bit_count()
            for word in all_words(algebra, len(part)):
                t = algebra.word_degree(word)
                p, q = algebra.word_type(word)
                block = self.blocks.setdefault((i, t, p, q), [])
                self.position[(mask, word)] = len(block)
                block.append((mask, word))
        self._delta_cache: dict[tuple[int, int, int, int], RationalMatrix] = {}

    @property
    def num_columns(self) -> int:
        return self.graph.num_edges + 1

    def block(self, i: int, t: int, p: int, q: int) -> list[BasisElem]:
        return self.blocks.get((i, t, p, q), [])

    def column_dims(self, i: int) -> dict[int, int]:
        """Dimension of column i per inner degree t."""
        out: dict[int, int] = {}
        for (col, t, _, _), block in self.blocks.items():
            if col == i:
                out[t] = out.get(t, 0) + len(block)
        return out

    def gradings(self):
        """All (t, p, q) gradings present, sorted."""
        return sorted({(t, p, q) for (_, t, p, q) in self.blocks})

    # -- differentials -------------------------------------------------------

    def delta_image(self, mask: int, word: Word):
        """Image of a basis element under the horizontal differential, as a
        list of ((mask', word'), coefficient)."""
        out = []
        for pos in range(self.graph.num_edges):
            if mask >> pos & 1:
                continue
            sign = Fraction(self.sign_fn(self.graph, mask, pos))
            new_mask = mask | (1 << pos)
            desc = arrangement.merge_descriptor(self.graph, mask, pos)
            if desc is None:
                out.append(((new_mask, word), sign))
            else:
                for w2, c in merge_word(self.algebra, word, *desc).items():
                    out.append(((new_mask, w2), sign * c))
        return out

    def delta_matrix(self, i: int, t: int, p: int, q: int) -> RationalMatrix:
        """delta on the (i, t, p, q) block, mapping to column i + 1."""
        key = (i, t, p, q)
        if key in self._delta_cache:
            return self._delta_cache[key]
        src = self.block(i, t, p, q)
        dst = self.block(i + 1, t, p, q)
        entries = []
        for col, (mask, word) in enumerate(src):
            for (target, coeff) in self.delta_image(mask, word):
                entries.append((self.position[target], col, coeff))
        mat = RationalMatrix.from_entries(len(dst), len(src), entries)
        self._delta_cache[key] = mat
        return mat

    def dprime_image(self, mask: int, word: Word):
        """Image under the vertical differential (column-sign-twisted
        factorwise algebra differential)."""
        i = mask.bit_count()
        sign = Fraction(_column_sign(i))
        return [
            ((mask, w2), sign * c)
            for w2, c in word_differential(self.algebra, word).items()
        ]

    # -- exact self-checks -----------------------------------------------------

    def verify_differentials(self) -> list[str]:
        """Exact check of delta^2 = 0 and, when the algebra carries a
        differential, d'^2 = 0 and d'delta + delta d' = 0.  Returns the
        list of failures (empty = consistent)."""
        bad = []
        for (mask, word) in self.position:
            acc: dict[BasisElem, Fraction] = {}
            for (mid, c) in self.delta_image(mask, word):
                for (tgt, c2) in self.delta_image(*mid):
                    x = acc.get(tgt, Fraction(0)) + c * c2
                    if x:
                        acc[tgt] = x
                    elif tgt in acc:
                        del acc[tgt]
            if acc:
                bad.append(
                    f"delta^2 != 0 on (mask={mask:#b}, word={self.algebra.ids(word)})"
                )
        if self.algebra.has_differential():
            for (mask, word) in self.position:
                acc = {}
                for (mid, c) in self.dprime_image(mask, word):
                    for (tgt, c2) in self.dprime_image(*mid):
                        x = acc.get(tgt, Fraction(0)) + c * c2
                        if x:
                            acc[tgt] = x
                        elif tgt in acc:
                            del acc[tgt]
                if acc:
                    bad.append(
                        f"d'^2 != 0 on (mask={mask:#b}, word={self.algebra.ids(word)})"
                    )
                acc = {}
                for (mid, c) in self.delta_image(mask, word):
                    for (tgt, c2) in self.dprime_image(*mid):
                        x = acc.get(tgt, Fraction(0)) + c * c2
                        if x:
                            acc[tgt] = x
                        elif tgt in acc:
                            del acc[tgt]
                for (mid, c) in self.dprime_image(mask, word):
                    for (tgt, c2) in self.delta_image(*mid):
                        x = acc.get(tgt, Fraction(0)) + c * c2
                        if x:
                            acc[tgt] = x
                        elif tgt in acc:
                            del acc[tgt]
                if acc:
                    bad.append(
                        f"d'delta + delta d' != 0 on (mask={mask:#b}, "
                        f"word={self.algebra.ids(word)})"
                    )
        return bad


def build_double_complex(algebra: HodgeAlgebra,
                         graph: arrangement.DiagonalGraph,
                         sign_fn=None) -> DoubleComplex:
    return DoubleComplex(algebra, graph, sign_fn=sign_fn)


# -- relative cohomology (d_B = 0) -------------------------------------------------


def _row_dims(task):
    """Cohomology dimensions of one row complex.

    task: ((t, p, q), [matrix data per column]) with matrices serialised as
    (nrows, ncols, entry list).  Returns the key and per-column dims."""
    (t, p, q), mats = task
    matrices = [RationalMatrix.from_entries(nr, nc, ent) for nr, nc, ent in mats]
    dims = []
    prev = RationalMatrix(matrices[0].ncols, 0)
    for mat in matrices:
        dims.append(cohomology_dim(prev, mat))
        prev = mat
    return (t, p, q), dims


def _serialise(m: RationalMatrix):
    return (
        m.nrows,
        m.ncols,
        [(r, c, v) for r in sorted(m.rows) for c, v in sorted(m.rows[r].items())],
    )


def relative_cohomology(algebra: HodgeAlgebra,
                        graph: arrangement.DiagonalGraph,
                        jobs: int = 1) -> HodgeTable:
    """Weight- and Hodge-graded relative cohomology of the pair (X^n, D_G).

    Requires a zero differential on the algebra (the cohomology-ring case);
    a class in column i with inner degree t lands at degree m = i + t and
    weight w = t.
    """
    if algebra.has_differential():
        raise ValidationError(
            ["algebra has a nonzero differential; use total_cohomology"]
        )
    algebra.require_valid()
    dcx = build_double_complex(algebra, graph)
    ncols = dcx.num_columns
    tasks = []
    for (t, p, q) in dcx.gradings():
        mats = [_serialise(dcx.delta_matrix(i, t, p, q)) for i in range(ncols)]
        tasks.append(((t, p, q), mats))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_row_dims, tasks))
    else:
        results = [_row_dims(task) for task in tasks]
    table = HodgeTable(
        RELATIVE, graph.n, graph.n * algebra.complex_dim,
        meta={"algebra": algebra.name, "graph": graph.spec_string()},
    )
    for (t, p, q), dims in sorted(results):
        for i, dim in enumerate(dims):
            table.add(i + t, t, p, q, dim)
    return table


# -- generic total complex (d_B allowed) ----------------------------------------


@dataclass
class WeightSS:
    """Dimension bookkeeping for the spectral sequence of the column
    (weight) filtration: pages[r][(p, q)] = dim E_r^{p,q}."""

    pages: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict)

    def page(self, r: int) -> dict[tuple[int, int], int]:
        return dict(self.pages.get(r, {}))

    @property
    def last(self) -> int:
        return max(self.pages)

    def monotonicity_violations(self) -> list[str]:
        out = []
        rs = sorted(self.pages)
        for r1, r2 in zip(rs, rs[1:]):
            keys = set(self.pages[r1]) | set(self.pages[r2])
            for key in sorted(keys):
                if self.pages[r2].get(key, 0) > self.pages[r1].get(key, 0):
                    out.append(f"dims increase from page {r1} to {r2} at {key}")
        return out


@dataclass
class TotalCohomology:
    dims: dict[int, int]
    weight_ss: WeightSS


class _TotalComplex:
    """The totalised complex with its column filtration, per total degree."""

    def __init__(self, dcx: DoubleComplex):
        self.dcx = dcx
        self.basis: dict[int, list[BasisElem]] = {}
        self.position: dict[BasisElem, int] = {}
        order = sorted(
            dcx.position,
            key=lambda mw: (mw[0].bit_count(), _subset_key(mw[0]), mw[1]),
        )
        for (mask, word) in order:
            m = mask.bit_count() + dcx.algebra.word_degree(word)
            block = self.basis.setdefault(m, [])
            self.position[(mask, word)] = len(block)
            block.append((mask, word))
        self.max_degree = max(self.basis) if self.basis else 0

    def dim(self, m: int) -> int:
        return len(self.basis.get(m, []))

    def differential(self, m: int) -> RationalMatrix:
        src = self.basis.get(m, [])
        dst = self.basis.get(m + 1, [])
        entries = []
        for col, (mask, word) in enumerate(src):
            for (target, coeff) in self.dcx.delta_image(mask, word):
                entries.append((self.position[target], col, coeff))
            for (target, coeff) in self.dcx.dprime_image(mask, word):
                entries.append((self.position[target], col, coeff))
        return RationalMatrix.from_entries(len(dst), len(src), entries)

    def filtration_submatrix(self, m: int, p_src: int, p_tgt_below: int) -> RationalMatrix:
        """The composite F_p C^m -> C^{m+1} -> C^{m+1}/F_{p'} C^{m+1},
        as a matrix on the filtered source basis."""
        src = [be for be in self.basis.get(m, []) if be[0].bit_count() >= p_src]
        dst = self.basis.get(m + 1, [])
        keep = [r for r, be in enumerate(dst) if be[0].bit_count() < p_tgt_below]
        keep_pos = {r: k for k, r in enumerate(keep)}
        entries = []
        for col, (mask, word) in enumerate(src):
            for (target, coeff) in self.dcx.delta_image(mask, word):
                r = self.position[target]
                if r in keep_pos:
                    entries.append((keep_pos[r], col, coeff))
            for (target, coeff) in self.dcx.dprime_image(mask, word):
                r = self.position[target]
                if r in keep_pos:
                    entries.append((keep_pos[r], col, coeff))
        return RationalMatrix.from_entries(len(keep), len(src), entries)

    def filtered_basis(self, m: int, p: int) -> list[BasisElem]:
        return [be for be in self.basis.get(m, []) if be[0].bit_count() >= p]


def _subset_key(mask: int) -> tuple[int, ...]:
    return tuple(k for k in range(mask.bit_length()) if mask >> k & 1)


def _embed(vec, sub_basis, position, total_dim):
    out = [Fraction(0)] * total_dim
    for val, be in zip(vec, sub_basis):
        out[position[be]] = val
    return out


def weight_spectral_sequence(dcx: DoubleComplex) -> WeightSS:
    """Dimensions of every page of the column-filtration spectral sequence.

    Standard filtered-complex formula: with Z_r^{p,q} the p-filtered
    cocycles modulo F_{p+r}, dim E_r = dim Z_r - dim(Z_{r-1}^{p+1,q-1}
    + d Z_{r-1}^{p-r+1,q+r-2}).  All ranks exact; pages are computed up to
    the first index where all differentials must vanish, which equals the
    limit term.
    """
    tc = _TotalComplex(dcx)
    ncols = dcx.num_columns
    r_max = ncols + 1  # d_r moves p by r; beyond the column span all vanish

    def z_kernel(p: int, m: int, r: int):
        """Basis of Z_r^{p, m-p} embedded in C^m coordinates.  The target
        filtration index p + r is taken before clamping p: F_p is the whole
        complex for p < 0, but dx must still land in F_{p+r}."""
        target = p + r
        p = max(p, 0)
        sub = tc.filtered_basis(m, p)
        mat = tc.filtration_submatrix(m, p, target)
        vecs = kernel_basis(mat)
        return [_embed(v, sub, tc.position, tc.dim(m)) for v in vecs]

    def z_dim(p: int, m: int, r: int) -> int:
        target = p + r
        p = max(p, 0)
        mat = tc.filtration_submatrix(m, p, target)
        return mat.ncols - rank(mat)

    ss = WeightSS()
    for r in range(1, r_max + 1):
        page: dict[tuple[int, int], int] = {}
        for m in range(0, tc.max_degree + 1):
            for p in range(0, ncols):
                q = m - p
                dim_z = z_dim(p, m, r)
                if dim_z == 0:
                    continue
                # boundary subspace: Z_{r-1}^{p+1,q-1} + d(Z_{r-1}^{p-r+1, q+r-2})
                gens = z_kernel(p + 1, m, r - 1)
                d_prev = tc.differential(m - 1) if m >= 1 else None
                if d_prev is not None and d_prev.ncols:
                    for v in z_kernel(p - r + 1, m - 1, r - 1):
                        gens.append(d_prev.apply(v))
                mat = RationalMatrix.from_entries(
                    len(gens), tc.dim(m),
                    (
                        (i, c, val)
                        for i, v in enumerate(gens)
                        for c, val in enumerate(v)
                        if val
                    ),
                )
                dim = dim_z - rank(mat)
                if dim:
                    page[(p, q)] = dim
        ss.pages[r] = page
    return ss


def total_cohomology(algebra: HodgeAlgebra,
                     graph: arrangement.DiagonalGraph) -> TotalCohomology:
    """Cohomology of the total complex s[A(B)] for a cdga B, with the pages
    of its column-filtration spectral sequence.

    This is the generic route: it accepts a nonzero differential, validates
    it (square zero, Leibniz), and reports plain per-degree dimensions; no
    Hodge table, since a differential does not preserve the bigrading.
    """
    from .algebra import validate_cdga

    bad = validate_cdga(algebra)
    if bad:
        raise ValidationError(bad)
    dcx = build_double_complex(algebra, graph)
    problems = dcx.verify_differentials()
    if problems:
        raise ConsistencyError("; ".join(problems))
    tc = _TotalComplex(dcx)
    dims: dict[int, int] = {}
    prev = RationalMatrix(tc.dim(0), 0)
    for m in range(0, tc.max_degree + 1):
        mat = tc.differential(m)
        h = cohomology_dim(prev, mat)
        if h:
            dims[m] = h
        prev = mat
    return TotalCohomology(dims, weight_spectral_sequence(dcx))
