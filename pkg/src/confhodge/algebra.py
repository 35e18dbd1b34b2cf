"""Finite-dimensional graded-commutative rational algebras with Hodge bigrading.

A HodgeAlgebra plays the role of the cohomology ring of a smooth compact
complex variety of complex dimension d: one class in degree 0 (the unit),
one in degree 2d (the fundamental class), exact rational structure
constants, and a pure (p, q)-type on every basis class.  An optional
square-zero differential turns it into a cdga for the generic total-complex
route; the main computation route keeps the differential zero.

Tensor powers use the standard Koszul convention throughout:

    (a (x) b) . (a' (x) b') = (-1)^(deg b * deg a') (a a') (x) (b b'),

extended to any number of factors.  The diagonal class is *solved for*
from its defining pairing property rather than written down by a signed
formula, so sign conventions are validated (by the (x (x) 1) Delta =
(1 (x) x) Delta identity and by the square-zero tests downstream), never
assumed.

Internally tensor words are tuples of basis indices; combinations are
sparse {word: Fraction} dicts with zero coefficients never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import linalg
from .errors import AlgebraMismatchError, DegeneratePairingError, ValidationError

Word = tuple[int, ...]
WordCombination = dict[Word, Fraction]


@dataclass(frozen=True)
class BasisClass:
    """One basis class: degree k and Hodge type (p, q) with p + q = k."""

    id: str
    degree: int
    p: int
    q: int


class HodgeAlgebra:
    """Graded-commutative rational algebra with Hodge bigrading.

    products maps (left_id, right_id) to {result_id: coefficient}; pairs
    not present multiply to zero.  differential maps id to {id: coefficient}
    (empty = the zero differential of an honest cohomology ring).
    """

    def __init__(self, name, complex_dim, basis, unit, fundamental,
                 products, differential=None):
        self.name = str(name)
        self.complex_dim = int(complex_dim)
        self.basis = tuple(basis)
        self.unit = unit
        self.fundamental = fundamental
        self.index = {}
        for k, b in enumerate(self.basis):
            self.index.setdefault(b.id, k)
        self.degrees = tuple(b.degree for b in self.basis)
        self.types = tuple((b.p, b.q) for b in self.basis)
        self.unit_index = self.index.get(unit)
        self.fundamental_index = self.index.get(fundamental)
        # index-keyed product table: (i, j) -> tuple of (k, coeff)
        self.table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        self._raw_products = {}
        for (a, b), res in products.items():
            clean = {e: Fraction(c) for e, c in res.items() if Fraction(c)}
            self._raw_products[(a, b)] = clean
            ia, ib = self.index.get(a), self.index.get(b)
            if ia is None or ib is None or any(e not in self.index for e in clean):
                raise ValidationError([f"product ({a},{b}) refers to unknown basis id"])
            if clean:
                self.table[(ia, ib)] = tuple(
                    sorted((self.index[e], c) for e, c in clean.items())
                )
        self.differential: dict[int, tuple[tuple[int, Fraction], ...]] = {}
        for a, img in (differential or {}).items():
            clean = {e: Fraction(c) for e, c in img.items() if Fraction(c)}
            if a not in self.index or any(e not in self.index for e in clean):
                raise ValidationError([f"differential of {a} refers to unknown basis id"])
            if clean:
                self.differential[self.index[a]] = tuple(
                    sorted((self.index[e], c) for e, c in clean.items())
                )
        self._validation: list[str] | None = None
        self._ring_validation: list[str] | None = None
        self._diagonal: WordCombination | None = None

    # -- basic structure ---------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def top_degree(self) -> int:
        return 2 * self.complex_dim

    def has_differential(self) -> bool:
        return bool(self.differential)

    def product(self, i: int, j: int):
        return self.table.get((i, j), ())

    def ids(self, word: Word) -> tuple[str, ...]:
        return tuple(self.basis[i].id for i in word)

    def word(self, ids) -> Word:
        try:
            return tuple(self.index[x] for x in ids)
        except KeyError as e:
            raise KeyError(f"unknown basis id {e.args[0]!r} in {self.name}") from None

    def word_degree(self, word: Word) -> int:
        return sum(self.degrees[i] for i in word)

    def word_type(self, word: Word) -> tuple[int, int]:
        p = sum(self.types[i][0] for i in word)
        q = sum(self.types[i][1] for i in word)
        return p, q

    def __repr__(self):
        return f"HodgeAlgebra({self.name!r}, d={self.complex_dim}, dim={self.dim})"

    # -- validation ---------------------------------------------------------

    def validation(self) -> list[str]:
        if self._validation is None:
            self._validation = validate_algebra(self)
        return self._validation

    def ring_validation(self) -> list[str]:
        """Ring-level invariants only (no Poincare pairing); what the
        generic cdga route needs."""
        if self._ring_validation is None:
            self._ring_validation = validate_algebra(self, require_pairing=False)
        return self._ring_validation

    def require_valid(self):
        bad = self.validation()
        if bad:
            raise ValidationError(bad)

    def require_ring_valid(self):
        bad = self.ring_validation()
        if bad:
            raise ValidationError(bad)

    # -- diagonal class ------------------------------------------------------

    def diagonal_class(self) -> WordCombination:
        if self._diagonal is None:
            self._diagonal = diagonal_class(self)
        return self._diagonal


@dataclass(frozen=True)
class AlgebraElement:
    """Sparse element of an algebra: {basis id: coefficient}."""

    algebra: HodgeAlgebra
    coeffs: tuple[tuple[str, Fraction], ...]

    @classmethod
    def make(cls, algebra, mapping):
        items = sorted(
            (k, Fraction(v)) for k, v in mapping.items() if Fraction(v)
        )
        for k, _ in items:
            if k not in algebra.index:
                raise KeyError(f"unknown basis id {k!r}")
        return cls(algebra, tuple(items))

    def as_dict(self):
        return dict(self.coeffs)

    def __add__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs:
            acc[k] = acc.get(k, Fraction(0)) + v
        return AlgebraElement.make(self.algebra, acc)

    def __sub__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs:
            acc[k] = acc.get(k, Fraction(0)) - v
        return AlgebraElement.make(self.algebra, acc)

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple((k, -v) for k, v in self.coeffs))

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraMismatchError("operands belong to different algebras")


def multiply(alg: HodgeAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the structure constants."""
    if x.algebra is not alg or y.algebra is not alg:
        raise AlgebraMismatchError("operands belong to different algebras")
    acc: dict[str, Fraction] = {}
    for a, ca in x.coeffs:
        ia = alg.index[a]
        for b, cb in y.coeffs:
            for k, c in alg.product(ia, alg.index[b]):
                e = alg.basis[k].id
                v = acc.get(e, Fraction(0)) + ca * cb * c
                if v:
                    acc[e] = v
                elif e in acc:
                    del acc[e]
    return AlgebraElement(alg, tuple(sorted(acc.items())))


# -- tensor words ------------------------------------------------------------


def unit_word(alg: HodgeAlgebra, c: int) -> Word:
    return (alg.unit_index,) * c


def all_words(alg: HodgeAlgebra, c: int):
    """All basis words of the c-th tensor power, lexicographic in the
    declared basis order."""
    return iproduct(range(alg.dim), repeat=c)


def word_multiply(alg: HodgeAlgebra, u: Word, v: Word) -> WordCombination:
    """Product of two basis words of B^(x c) with the total Koszul sign."""
    if len(u) != len(v):
        raise AlgebraMismatchError("factor counts differ")
    # sign: move each v-factor left past the later u-factors
    s = 0
    for jj in range(len(v)):
        dv = alg.degrees[v[jj]]
        if dv % 2:
            s += sum(alg.degrees[u[ii]] for ii in range(jj + 1, len(u)))
    sign = Fraction(-1 if s % 2 else 1)
    result: WordCombination = {(): sign}
    for a, b in zip(u, v):
        terms = alg.product(a, b)
        if not terms:
            return {}
        new: WordCombination = {}
        for word, coeff in result.items():
            for k, c in terms:
                w2 = word + (k,)
                x = new.get(w2, Fraction(0)) + coeff * c
                if x:
                    new[w2] = x
                elif w2 in new:
                    del new[w2]
        result = new
        if not result:
            return {}
    return result


def combination_add(acc: WordCombination, other: WordCombination, scale=Fraction(1)):
    for w, c in other.items():
        x = acc.get(w, Fraction(0)) + scale * c
        if x:
            acc[w] = x
        elif w in acc:
            del acc[w]
    return acc


def tensor_multiply(alg: HodgeAlgebra, u: WordCombination, v: WordCombination) -> WordCombination:
    """Bilinear, sign-correct product on combinations in a tensor power."""
    acc: WordCombination = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            combination_add(acc, word_multiply(alg, wu, wv), cu * cv)
    return acc


def merge_word(alg: HodgeAlgebra, word: Word, u: int, v: int) -> WordCombination:
    """Merge factors u < v (1-based) of a basis word: pull factor v next to
    factor u with the Koszul sign for jumping the factors in between, then
    multiply.  The result is indexed by the remaining c - 1 positions."""
    c = len(word)
    if not (1 <= u < v <= c):
        raise ValueError(f"positions ({u},{v}) out of range for {c} factors")
    iu, iv = word[u - 1], word[v - 1]
    jumped = sum(alg.degrees[word[k]] for k in range(u, v - 1))
    sign = -1 if (alg.degrees[iv] * jumped) % 2 else 1
    rest = word[: u - 1], word[u : v - 1] + word[v:]
    out: WordCombination = {}
    for k, coeff in alg.product(iu, iv):
        w2 = rest[0] + (k,) + rest[1]
        x = out.get(w2, Fraction(0)) + sign * coeff
        if x:
            out[w2] = x
        elif w2 in out:
            del out[w2]
    return out


def merge_factors(alg: HodgeAlgebra, comb: WordCombination, u: int, v: int) -> WordCombination:
    """Linear extension of merge_word to combinations."""
    acc: WordCombination = {}
    for w, c in comb.items():
        combination_add(acc, merge_word(alg, w, u, v), c)
    return acc


def integral(alg: HodgeAlgebra, comb) -> Fraction:
    """Coefficient of the fundamental class (evaluation against the
    fundamental cycle)."""
    if isinstance(comb, AlgebraElement):
        return dict(comb.coeffs).get(alg.fundamental, Fraction(0))
    return comb.get((alg.fundamental_index,), Fraction(0))


def diagonal_class(alg: HodgeAlgebra) -> WordCombination:
    """The class of the diagonal embedding inside the tensor square.

    Defined as the unique Delta in (B (x) B)^(2d) with

        <y, Delta> = integral(multiply(merge(y)))   for all y in (B (x) B)^(2d),

    where <.,.> is the Poincare pairing of the tensor-square algebra.
    Solved as an exact linear system; a singular system means the input
    pairing is degenerate.
    """
    two_d = alg.top_degree
    words = [w for w in all_words(alg, 2) if alg.word_degree(w) == two_d]
    if not words:
        raise DegeneratePairingError("no tensor-square classes in degree 2d")
    pos = {w: k for k, w in enumerate(words)}
    fund2 = (alg.fundamental_index, alg.fundamental_index)
    entries = []
    rhs = []
    for r, y in enumerate(words):
        image = merge_word(alg, y, 1, 2)
        rhs.append(image.get((alg.fundamental_index,), Fraction(0)))
        for w in words:
            prod = word_multiply(alg, y, w)
            c = prod.get(fund2, Fraction(0))
            if c:
                entries.append((r, pos[w], c))
    mat = linalg.RationalMatrix.from_entries(len(words), len(words), entries)
    try:
        sol = linalg.solve_unique(mat, rhs)
    except DegeneratePairingError:
        raise DegeneratePairingError(
            f"Poincare pairing of {alg.name} is degenerate; no diagonal class"
        ) from None
    return {w: sol[k] for k, w in enumerate(words) if sol[k]}


# -- validation ----------------------------------------------------------------


def validate_algebra(alg: HodgeAlgebra, require_pairing: bool = True) -> list[str]:
    """Check every algebra invariant; returns the list of violations
    (empty when valid).  Violations are data, not failures.

    require_pairing=False skips Poincare nondegeneracy, the one invariant
    a contractible test cdga legitimately fails."""
    bad: list[str] = []
    ids = [b.id for b in alg.basis]
    dupes = sorted({x for x in ids if ids.count(x) > 1})
    for x in dupes:
        bad.append(f"duplicate basis id {x!r}")
    for b in alg.basis:
        if b.degree < 0 or b.p < 0 or b.q < 0:
            bad.append(f"negative grading on {b.id!r}")
        if b.p + b.q != b.degree:
            bad.append(f"purity violated at {b.id!r}: p+q={b.p + b.q} != degree {b.degree}")
    if alg.complex_dim < 0:
        bad.append(f"complex dimension {alg.complex_dim} negative")
    two_d = alg.top_degree
    deg0 = [b.id for b in alg.basis if b.degree == 0]
    degtop = [b.id for b in alg.basis if b.degree == two_d]
    if len(deg0) != 1:
        bad.append(f"expected exactly one degree-0 class, found {deg0}")
    if len(degtop) != 1:
        bad.append(f"expected exactly one degree-{two_d} class, found {degtop}")
    over = [b.id for b in alg.basis if b.degree > two_d]
    if over:
        bad.append(f"classes above degree {two_d}: {over}")
    if alg.unit_index is None:
        bad.append(f"unit id {alg.unit!r} not in basis")
    elif alg.degrees[alg.unit_index] != 0:
        bad.append(f"unit {alg.unit!r} has degree {alg.degrees[alg.unit_index]} != 0")
    if alg.fundamental_index is None:
        bad.append(f"fundamental id {alg.fundamental!r} not in basis")
    elif alg.degrees[alg.fundamental_index] != two_d:
        bad.append(f"fundamental {alg.fundamental!r} is not in degree {two_d}")
    if bad:
        return bad  # gradings broken: the remaining checks would be noise

    n = alg.dim
    # degree and type additivity
    for (i, j), terms in alg.table.items():
        for k, _ in terms:
            if alg.degrees[k] != alg.degrees[i] + alg.degrees[j]:
                bad.append(
                    f"degree additivity violated at ({ids[i]},{ids[j]}): "
                    f"result {ids[k]}"
                )
            pi, qi = alg.types[i]
            pj, qj = alg.types[j]
            if alg.types[k] != (pi + pj, qi + qj):
                bad.append(
                    f"Hodge type additivity violated at ({ids[i]},{ids[j]}): "
                    f"result {ids[k]}"
                )
    # graded commutativity
    for i in range(n):
        for j in range(n):
            sign = -1 if (alg.degrees[i] * alg.degrees[j]) % 2 else 1
            left = dict(alg.product(i, j))
            right = {k: sign * c for k, c in alg.product(j, i)}
            if left != right:
                bad.append(f"graded commutativity violated at ({ids[i]},{ids[j]})")
    # unit law
    if alg.unit_index is not None:
        e = alg.unit_index
        for i in range(n):
            if dict(alg.product(e, i)) != {i: Fraction(1)}:
                bad.append(f"unit law violated at (unit,{ids[i]})")
            if dict(alg.product(i, e)) != {i: Fraction(1)}:
                bad.append(f"unit law violated at ({ids[i]},unit)")
    # associativity on basis triples
    for i in range(n):
        for j in range(n):
            ij = alg.product(i, j)
            for k in range(n):
                jk = alg.product(j, k)
                left: dict[int, Fraction] = {}
                for m, c in ij:
                    for e2, c2 in alg.product(m, k):
                        left[e2] = left.get(e2, Fraction(0)) + c * c2
                right: dict[int, Fraction] = {}
                for m, c in jk:
                    for e2, c2 in alg.product(i, m):
                        right[e2] = right.get(e2, Fraction(0)) + c * c2
                left = {e2: c for e2, c in left.items() if c}
                right = {e2: c for e2, c in right.items() if c}
                if left != right:
                    bad.append(
                        f"associativity violated at ({ids[i]},{ids[j]},{ids[k]})"
                    )
    # Poincare pairing nondegenerate in every complementary pair of degrees
    if not require_pairing:
        return bad
    fund = alg.fundamental_index
    for k_deg in range(0, two_d + 1):
        rows = [i for i in range(n) if alg.degrees[i] == k_deg]
        cols = [j for j in range(n) if alg.degrees[j] == two_d - k_deg]
        if len(rows) != len(cols):
            bad.append(
                f"pairing between degrees {k_deg} and {two_d - k_deg} is not square "
                f"({len(rows)} vs {len(cols)})"
            )
            continue
        if not rows:
            continue
        entries = []
        for r, i in enumerate(rows):
            for c, j in enumerate(cols):
                v = dict(alg.product(i, j)).get(fund, Fraction(0))
                if v:
                    entries.append((r, c, v))
        mat = linalg.RationalMatrix.from_entries(len(rows), len(cols), entries)
        if linalg.rank(mat) != len(rows):
            bad.append(f"Poincare pairing degenerate between degrees {k_deg} and {two_d - k_deg}")
    return bad


def validate_cdga(alg: HodgeAlgebra) -> list[str]:
    """Checks for the differential: degree +1, d^2 = 0, Leibniz rule.

    Used by the generic total-complex route, where the algebra need not
    satisfy Poincare duality."""
    bad: list[str] = []
    ids = [b.id for b in alg.basis]

    def apply_d(vec: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, c in vec.items():
            for k, v in alg.differential.get(i, ()):
                x = out.get(k, Fraction(0)) + c * v
                if x:
                    out[k] = x
                elif k in out:
                    del out[k]
        return out

    for i, terms in alg.differential.items():
        for k, _ in terms:
            if alg.degrees[k] != alg.degrees[i] + 1:
                bad.append(f"differential of {ids[i]} not of degree +1")
    for i in alg.differential:
        if apply_d(dict(alg.differential[i])):
            bad.append(f"d^2 != 0 at {ids[i]}")
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = apply_d({k: c for k, c in alg.product(i, j)})
            rhs: dict[int, Fraction] = {}
            for k, v in alg.differential.get(i, ()):
                for e2, c2 in alg.product(k, j):
                    x = rhs.get(e2, Fraction(0)) + v * c2
                    if x:
                        rhs[e2] = x
                    elif e2 in rhs:
                        del rhs[e2]
            sign = -1 if alg.degrees[i] % 2 else 1
            for k, v in alg.differential.get(j, ()):
                for e2, c2 in alg.product(i, k):
                    x = rhs.get(e2, Fraction(0)) + sign * v * c2
                    if x:
                        rhs[e2] = x
                    elif e2 in rhs:
                        del rhs[e2]
            if lhs != rhs:
                bad.append(f"Leibniz rule violated at ({ids[i]},{ids[j]})")
    return bad


def word_differential(alg: HodgeAlgebra, word: Word) -> WordCombination:
    """Tensor-power differential: sum over factors with the Koszul sign of
    the degrees passed over."""
    out: WordCombination = {}
    prefix_parity = 0
    for k, i in enumerate(word):
        for e, c in alg.differential.get(i, ()):
            w2 = word[:k] + (e,) + word[k + 1 :]
            v = (-c if prefix_parity else c)
            x = out.get(w2, Fraction(0)) + v
            if x:
                out[w2] = x
            elif w2 in out:
                del out[w2]
        prefix_parity ^= alg.degrees[i] % 2
    return out
