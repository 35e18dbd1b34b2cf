"""The Kriz/Totaro model of the Leray E2 page, as an independent route.

For the full arrangement (all diagonals of X^n) the E2 term of the Leray
spectral sequence of the open embedding is the graded-commutative algebra
on H*(X)^(x n) and squarefree generators G_ij = G_ji of degree 2d - 1
(weight 2d, type (d, d)), modulo

  * locality:  (a at factor i - a at factor j) . G_ij = 0,
  * the three-term relation:  G_ij G_jk + G_jk G_ki + G_ki G_ij = 0,

with the differential sending G_ij to the diagonal class placed in factors
(i, j), extended as a graded derivation.  The cohomology of (E2, d2) is
the E3 page; its table must agree with the duality route, which is the
whole point of keeping the two routes independent.

The relation set is a falsifiable design input: the module checks, exactly,
that d2 is well defined on the quotient and squares to zero, and raises a
fatal consistency error instead of silently patching anything.  E2 itself
is represented degreewise as a quotient by a computed relation subspace;
no monomial normal-form basis is assumed.

Monomials are written word-first (w (x) G_S, generators in increasing edge
order), so moving the G block past a word costs (-1)^(|S| deg w) and each
transposition of two generators costs -1.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations

from .algebra import HodgeAlgebra, Word, all_words, tensor_multiply, word_multiply
from .arrangement import subsets_by_cardinality
from .errors import ConsistencyError
from .linalg import RationalMatrix, RowSpace, rank
from .tables import OPEN, HodgeTable

GMonomial = tuple[int, Word]  # (mask over the K_n edge list, tensor word)


def _derivation_sign(word_parity: int, position: int) -> int:
    """Sign of the derivation term removing the generator at 1-based
    `position` of the sorted generator list, behind a word of the given
    degree parity."""
    return -1 if (word_parity + position - 1) % 2 else 1


class E2Page:
    """The E2 term, held blockwise by (degree, weight, p, q)."""

    def __init__(self, algebra: HodgeAlgebra, n: int, diagonal=None):
        algebra.require_valid()
        if algebra.has_differential():
            raise ConsistencyError("the E2 model needs a zero differential")
        self.algebra = algebra
        self.n = n
        self.edges = tuple(combinations(range(1, n + 1), 2))
        self.diagonal = diagonal if diagonal is not None else algebra.diagonal_class()
        self.blocks: dict[tuple[int, int, int, int], list[GMonomial]] = {}
        self.pos: dict[GMonomial, int] = {}
        self._order: list[GMonomial] = []
        for mask in subsets_by_cardinality(len(self.edges)):
            for word in all_words(algebra, n):
                mono = (mask, word)
                block = self.blocks.setdefault(self.grading(mono), [])
                self.pos[mono] = len(block)
                block.append(mono)
                self._order.append(mono)
        self.relations: dict[tuple[int, int, int, int], list[dict[int, Fraction]]] = {}
        for gen in self._relation_generators():
            for mono in self._order:
                row = self._multiply_into_blocks(gen, mono)
                if row is not None:
                    grading, vec = row
                    self.relations.setdefault(grading, []).append(vec)
        self._d2_cache: dict[GMonomial, dict[GMonomial, Fraction]] = {}

    # -- gradings ---------------------------------------------------------------

    def grading(self, mono: GMonomial) -> tuple[int, int, int, int]:
        mask, word = mono
        alg = self.algebra
        k = mask.bit_count()
        d = alg.complex_dim
        wd = alg.word_degree(word)
        p, q = alg.word_type(word)
        return (wd + (2 * d - 1) * k, wd + 2 * d * k, p + d * k, q + d * k)

    def block(self, m, w, p, q) -> list[GMonomial]:
        return self.blocks.get((m, w, p, q), [])

    def monomials_of_degree(self, m: int) -> list[GMonomial]:
        return [mono for mono in self._order if self.grading(mono)[0] == m]

    def block_relations(self, m, w, p, q) -> list[dict[int, Fraction]]:
        return self.relations.get((m, w, p, q), [])

    def dims_e2(self) -> dict[tuple[int, int, int, int], int]:
        """Dimension of each E2 block (monomials modulo relations)."""
        out = {}
        for grading, monos in self.blocks.items():
            dim = len(monos) - _rows_rank(self.block_relations(*grading), len(monos))
            if dim:
                out[grading] = dim
        return out

    # -- algebra structure -------------------------------------------------------

    def monomial_multiply(self, m1: GMonomial, m2: GMonomial) -> dict[GMonomial, Fraction]:
        """Product of two monomials; zero when the generator sets overlap."""
        (s1, w1), (s2, w2) = m1, m2
        if s1 & s2:
            return {}
        parity = (s1.bit_count() * self.algebra.word_degree(w2)) & 1
        for a in _bits(s1):
            parity ^= (s2 & ((1 << a) - 1)).bit_count() & 1
        sign = -1 if parity else 1
        out = {}
        for w, c in word_multiply(self.algebra, w1, w2).items():
            out[(s1 | s2, w)] = sign * c
        return out

    def _multiply_into_blocks(self, gen, mono):
        """gen . mono for a homogeneous combination gen; returns
        (grading, sparse block-coordinate vector) or None when zero."""
        acc: dict[GMonomial, Fraction] = {}
        for m1, c1 in gen.items():
            for m2, c2 in self.monomial_multiply(m1, mono).items():
                x = acc.get(m2, Fraction(0)) + c1 * c2
                if x:
                    acc[m2] = x
                elif m2 in acc:
                    del acc[m2]
        if not acc:
            return None
        grading = self.grading(next(iter(acc)))
        vec = {self.pos[m2]: c for m2, c in acc.items()}
        return grading, vec

    def _relation_generators(self):
        alg = self.algebra
        unit = alg.unit_index
        gens = []
        for k, (i, j) in enumerate(self.edges):
            bit = 1 << k
            for a in range(alg.dim):
                if a == unit:
                    continue
                wi = tuple(a if v == i else unit for v in range(1, self.n + 1))
                wj = tuple(a if v == j else unit for v in range(1, self.n + 1))
                gens.append({(bit, wi): Fraction(1), (bit, wj): Fraction(-1)})
        pos_of = {e: k for k, e in enumerate(self.edges)}
        unit_word = (unit,) * self.n
        for (i, j, k) in combinations(range(1, self.n + 1), 3):
            e_ij = 1 << pos_of[(i, j)]
            e_ik = 1 << pos_of[(i, k)]
            e_jk = 1 << pos_of[(j, k)]
            # G_ij G_jk + G_jk G_ki + G_ki G_ij in the increasing normal form
            gens.append({
                (e_ij | e_jk, unit_word): Fraction(1),
                (e_ik | e_jk, unit_word): Fraction(-1),
                (e_ij | e_ik, unit_word): Fraction(-1),
            })
        return gens

    # -- differential -------------------------------------------------------------

    def insert_diagonal(self, edge_pos: int) -> dict[Word, Fraction]:
        """The diagonal class placed in the two factors named by the edge,
        units elsewhere (no sign: all the other slots are degree 0)."""
        i, j = self.edges[edge_pos]
        unit = self.algebra.unit_index
        out = {}
        for (x, y), c in self.diagonal.items():
            word = tuple(
                x if v == i else y if v == j else unit for v in range(1, self.n + 1)
            )
            out[word] = out.get(word, Fraction(0)) + c
        return {w: c for w, c in out.items() if c}

    def d2_monomial(self, mono: GMonomial) -> dict[GMonomial, Fraction]:
        """Graded-derivation differential at the free-monomial level.
        Memoised: the consistency suite and the page assembly both walk it."""
        cached = self._d2_cache.get(mono)
        if cached is not None:
            return cached
        mask, word = mono
        alg = self.algebra
        word_parity = alg.word_degree(word) & 1
        out: dict[GMonomial, Fraction] = {}
        for l, pos in enumerate(_bits(mask), start=1):
            sign = Fraction(_derivation_sign(word_parity, l))
            ins = self.insert_diagonal(pos)
            prod = tensor_multiply(alg, {word: Fraction(1)}, ins)
            rest = mask & ~(1 << pos)
            for w2, c in prod.items():
                key = (rest, w2)
                x = out.get(key, Fraction(0)) + sign * c
                if x:
                    out[key] = x
                elif key in out:
                    del out[key]
        self._d2_cache[mono] = out
        return out

    def d2_vector(self, comb: dict, expect_grading=None):
        """d2 of a combination, as a block-coordinate vector of the target
        block; raises ConsistencyError when a term leaves that block."""
        acc: dict[GMonomial, Fraction] = {}
        for mono, c in comb.items():
            for m2, c2 in self.d2_monomial(mono).items():
                x = acc.get(m2, Fraction(0)) + c * c2
                if x:
                    acc[m2] = x
                elif m2 in acc:
                    del acc[m2]
        vec: dict[int, Fraction] = {}
        for m2, c in acc.items():
            g = self.grading(m2)
            if expect_grading is not None and g != expect_grading:
                raise ConsistencyError(
                    f"d2 term {m2} lands in grading {g}, expected {expect_grading}"
                )
            vec[self.pos[m2]] = c
        return vec


def _bits(mask: int):
    pos = 0
    while mask:
        if mask & 1:
            yield pos
        mask >>= 1
        pos += 1


def _rows_rank(rows, ncols: int) -> int:
    if not rows:
        return 0
    mat = RationalMatrix.from_entries(
        len(rows), ncols,
        ((r, c, v) for r, row in enumerate(rows) for c, v in row.items()),
    )
    return rank(mat)


def build_e2(algebra: HodgeAlgebra, n: int, diagonal=None) -> E2Page:
    """Assemble the E2 page of the full arrangement on n points."""
    return E2Page(algebra, n, diagonal=diagonal)


def d2_matrix(page: E2Page, m: int) -> RationalMatrix:
    """Matrix of d2 on the degree-m monomial span (all gradings stacked),
    columns ordered like the page's deterministic monomial order."""
    src = page.monomials_of_degree(m)
    dst = page.monomials_of_degree(m + 1)
    dst_pos = {mono: r for r, mono in enumerate(dst)}
    entries = []
    for col, mono in enumerate(src):
        for m2, c in page.d2_monomial(mono).items():
            if m2 not in dst_pos:
                raise ConsistencyError(
                    f"d2 of {mono} does not raise the degree by one (hit {m2})"
                )
            entries.append((dst_pos[m2], col, c))
    return RationalMatrix.from_entries(len(dst), len(src), entries)


def verify_page(page: E2Page) -> list[str]:
    """Exact consistency suite: d2 preserves (weight, p, q) and raises the
    degree by one; d2 . d2 = 0 on the monomial span; d2 maps the relation
    subspace into the relation subspace (well-definedness on the quotient).
    Returns the list of failures."""
    bad = []
    for mono in page._order:
        m, w, p, q = page.grading(mono)
        image = page.d2_monomial(mono)
        for m2 in image:
            if page.grading(m2) != (m + 1, w, p, q):
                bad.append(
                    f"d2 of {mono} hits {m2} with grading {page.grading(m2)}, "
                    f"expected {(m + 1, w, p, q)}"
                )
        acc: dict[GMonomial, Fraction] = {}
        for m2, c in image.items():
            for m3, c2 in page.d2_monomial(m2).items():
                x = acc.get(m3, Fraction(0)) + c * c2
                if x:
                    acc[m3] = x
                elif m3 in acc:
                    del acc[m3]
        if acc:
            bad.append(f"d2^2 != 0 at {mono}")
    if bad:
        return bad
    for (m, w, p, q), rows in sorted(page.relations.items()):
        target = (m + 1, w, p, q)
        target_rows = page.relations.get(target, [])
        ncols_target = len(page.block(*target))
        space = RowSpace(ncols_target)
        for row in target_rows:
            space.add(row)
        block = page.block(m, w, p, q)
        for row in rows:
            comb = {block[k]: c for k, c in row.items()}
            try:
                image = page.d2_vector(comb, expect_grading=target)
            except ConsistencyError as e:
                bad.append(str(e))
                continue
            if image and not space.contains(image):
                bad.append(
                    f"d2 of a relation in block {(m, w, p, q)} leaves the "
                    f"relation subspace"
                )
    return bad


def _grading_ranks(task):
    """Rank bookkeeping for one block: rank of its relation rows and rank
    of the stacked [d2(block basis); next relations] rows."""
    grading, nmono, rel_rows, stacked_rows, ncols_target = task
    return grading, _rows_rank(rel_rows, nmono), _rows_rank(stacked_rows, ncols_target)


def e3_table(algebra: HodgeAlgebra, n: int, jobs: int = 1,
             diagonal=None, page: E2Page | None = None) -> HodgeTable:
    """Cohomology of (E2, d2) per (degree, weight, p, q): the E3 page.

    Always runs the exact consistency suite first; a failure means the
    relation presentation or the diagonal class is wrong and is raised as
    a fatal error, never patched.
    """
    if page is None:
        page = build_e2(algebra, n, diagonal=diagonal)
    problems = verify_page(page)
    if problems:
        raise ConsistencyError("; ".join(problems[:5]))
    tasks = []
    for grading in sorted(page.blocks):
        m, w, p, q = grading
        block = page.block(*grading)
        target = (m + 1, w, p, q)
        stacked = [dict(row) for row in page.relations.get(target, [])]
        for mono in block:
            vec = page.d2_vector({mono: Fraction(1)}, expect_grading=target)
            if vec:
                stacked.append(vec)
        tasks.append((
            grading,
            len(block),
            page.block_relations(*grading),
            stacked,
            len(page.block(*target)),
        ))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_grading_ranks, tasks))
    else:
        results = [_grading_ranks(task) for task in tasks]
    # fibers[(w, p, q)][m] = (block dim, rank of relations, rank of stack)
    fibers: dict[tuple[int, int, int], dict[int, tuple[int, int, int]]] = {}
    for (m, w, p, q), rank_r, rank_stack in results:
        nmono = len(page.block(m, w, p, q))
        fibers.setdefault((w, p, q), {})[m] = (nmono, rank_r, rank_stack)
    table = HodgeTable(
        OPEN, n, n * algebra.complex_dim,
        meta={"algebra": algebra.name, "graph": "complete", "route": "kriz"},
    )
    for (w, p, q), by_m in sorted(fibers.items()):
        for m, (nmono, rank_r, rank_stack) in sorted(by_m.items()):
            nxt = by_m.get(m + 1)
            rank_dbar = rank_stack - (nxt[1] if nxt else 0)
            prev = by_m.get(m - 1)
            rank_dbar_prev = (prev[2] - rank_r) if prev else 0
            dim = (nmono - rank_r) - rank_dbar - rank_dbar_prev
            if dim < 0:
                raise ConsistencyError(
                    f"negative E3 dimension at {(m, w, p, q)}: bookkeeping bug"
                )
            table.add(m, w, p, q, dim)
    return table
