import random
from fractions import Fraction

import pytest

from confhodge.algebra import (
    AlgebraElement,
    BasisClass,
    HodgeAlgebra,
    all_words,
    diagonal_class,
    integral,
    merge_factors,
    merge_word,
    multiply,
    tensor_multiply,
    validate_algebra,
    word_multiply,
)
from confhodge.errors import AlgebraMismatchError, DegeneratePairingError
from confhodge import fixtures


def elem(alg, mapping):
    return AlgebraElement.make(alg, mapping)


def comb(alg, *terms):
    """terms: (coeff, id sequence) pairs -> word combination."""
    out = {}
    for coeff, ids in terms:
        w = alg.word(ids)
        out[w] = out.get(w, Fraction(0)) + Fraction(coeff)
    return {w: c for w, c in out.items() if c}


class TestValidate:
    def test_p1_valid(self, p1):
        assert validate_algebra(p1) == []

    def test_degree_additivity_violation(self):
        alg = HodgeAlgebra(
            "bad", 1,
            [BasisClass("1", 0, 0, 0), BasisClass("h", 2, 1, 1)],
            "1", "h",
            {
                ("1", "1"): {"1": 1}, ("1", "h"): {"h": 1}, ("h", "1"): {"h": 1},
                ("h", "h"): {"h": 1},
            },
        )
        report = validate_algebra(alg)
        assert any("degree additivity" in v and "(h,h)" in v for v in report)

    def test_missing_koszul_sign(self):
        # odd-degree classes must anticommute; a.b = b.a = t is invalid
        alg = HodgeAlgebra(
            "bad_ell", 1,
            [
                BasisClass("1", 0, 0, 0),
                BasisClass("a", 1, 1, 0),
                BasisClass("b", 1, 0, 1),
                BasisClass("t", 2, 1, 1),
            ],
            "1", "t",
            {
                ("1", "1"): {"1": 1},
                ("1", "a"): {"a": 1}, ("a", "1"): {"a": 1},
                ("1", "b"): {"b": 1}, ("b", "1"): {"b": 1},
                ("1", "t"): {"t": 1}, ("t", "1"): {"t": 1},
                ("a", "b"): {"t": 1}, ("b", "a"): {"t": 1},
            },
        )
        report = validate_algebra(alg)
        assert any("graded commutativity" in v and "(a,b)" in v for v in report)

    def test_all_fixtures_valid(self, all_fixtures):
        for alg in all_fixtures:
            assert validate_algebra(alg) == [], alg.name

    def test_disconnected_rejected(self):
        alg = HodgeAlgebra(
            "two_points", 0,
            [BasisClass("e1", 0, 0, 0), BasisClass("e2", 0, 0, 0)],
            "e1", "e1",
            {("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1}},
        )
        report = validate_algebra(alg)
        assert any("exactly one degree-0" in v for v in report)

    def test_degenerate_pairing_reported(self):
        alg = HodgeAlgebra(
            "degenerate", 1,
            [BasisClass("1", 0, 0, 0), BasisClass("x", 1, 1, 0),
             BasisClass("y", 2, 1, 1)],
            "1", "y",
            {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
             ("1", "y"): {"y": 1}, ("y", "1"): {"y": 1}},
        )
        report = validate_algebra(alg)
        assert any("pairing" in v and "degenerate" in v for v in report)
        assert validate_algebra(alg, require_pairing=False) == []


class TestMultiply:
    def test_unit_law(self, p1):
        one, h = elem(p1, {"1": 1}), elem(p1, {"h": 1})
        assert multiply(p1, one, h).as_dict() == {"h": Fraction(1)}

    def test_koszul_sign(self, elliptic):
        a, b = elem(elliptic, {"a": 1}), elem(elliptic, {"b": 1})
        assert multiply(elliptic, a, b).as_dict() == {"t": Fraction(1)}
        assert multiply(elliptic, b, a).as_dict() == {"t": Fraction(-1)}

    def test_truncation_above_top_degree(self, p1):
        h = elem(p1, {"h": 1})
        assert multiply(p1, h, h).as_dict() == {}

    def test_mismatched_algebras(self, p1, elliptic):
        with pytest.raises(AlgebraMismatchError):
            multiply(p1, elem(p1, {"h": 1}), elem(elliptic, {"a": 1}))


class TestTensorMultiply:
    def test_even_degrees_no_sign(self, p1):
        u = comb(p1, (1, ["1", "h"]))
        v = comb(p1, (1, ["h", "1"]))
        assert tensor_multiply(p1, u, v) == comb(p1, (1, ["h", "h"]))

    def test_koszul_sign_on_odd_factors(self, elliptic):
        u = comb(elliptic, (1, ["1", "a"]))
        v = comb(elliptic, (1, ["a", "1"]))
        assert tensor_multiply(elliptic, u, v) == comb(elliptic, (-1, ["a", "a"]))

    def test_unit_word(self, elliptic):
        unit = comb(elliptic, (1, ["1", "1"]))
        for ids in [["a", "b"], ["t", "1"], ["b", "t"]]:
            w = comb(elliptic, (1, ids))
            assert tensor_multiply(elliptic, unit, w) == w
            assert tensor_multiply(elliptic, w, unit) == w

    def test_associative_exhaustive(self, elliptic):
        words = [comb(elliptic, (1, [x, y]))
                 for x in ["1", "a", "b", "t"] for y in ["1", "a", "b", "t"]]
        for u in words[:8]:
            for v in words[:8]:
                for w in words[:8]:
                    lhs = tensor_multiply(elliptic, tensor_multiply(elliptic, u, v), w)
                    rhs = tensor_multiply(elliptic, u, tensor_multiply(elliptic, v, w))
                    assert lhs == rhs

    def test_graded_commutative(self, elliptic):
        alg = elliptic
        for wu in all_words(alg, 2):
            for wv in all_words(alg, 2):
                du, dv = alg.word_degree(wu), alg.word_degree(wv)
                sign = Fraction(-1 if (du * dv) % 2 else 1)
                lhs = word_multiply(alg, wu, wv)
                rhs = {w: sign * c for w, c in word_multiply(alg, wv, wu).items()}
                assert lhs == rhs

    def test_factor_count_mismatch(self, p1):
        with pytest.raises(AlgebraMismatchError):
            word_multiply(p1, p1.word(["1"]), p1.word(["1", "1"]))


class TestMergeFactors:
    def test_p1_two_factors(self, p1):
        assert merge_factors(p1, comb(p1, (1, ["h", "1"])), 1, 2) == comb(p1, (1, ["h"]))
        assert merge_factors(p1, comb(p1, (1, ["h", "h"])), 1, 2) == {}

    def test_square_vanishes_through_jump(self, elliptic):
        got = merge_factors(elliptic, comb(elliptic, (1, ["a", "b", "a"])), 1, 3)
        assert got == {}

    def test_jump_sign_three_factors(self, elliptic):
        # merge(1,3) on a x t x b: jump sign (-1)^(deg b * deg t) = +1,
        # then a.b = t in slot 1
        got = merge_factors(elliptic, comb(elliptic, (1, ["a", "t", "b"])), 1, 3)
        assert got == comb(elliptic, (1, ["t", "t"]))

    def test_odd_jump_sign(self, elliptic):
        # merge(1,3) on a x a x b: jump sign (-1)^(deg b * deg a) = -1
        got = merge_factors(elliptic, comb(elliptic, (1, ["a", "a", "b"])), 1, 3)
        assert got == comb(elliptic, (-1, ["t", "a"]))

    def test_out_of_range(self, p1):
        with pytest.raises(ValueError):
            merge_word(p1, p1.word(["h", "1"]), 2, 2)

    def test_disjoint_merges_commute(self, elliptic, genus2):
        # merge(1,2) then merge(1,2) of the shrunk word == merge(3,4) then
        # merge(1,2), on random 4-factor words
        rng = random.Random(5)
        for alg in (elliptic, genus2):
            names = [b.id for b in alg.basis]
            for _ in range(60):
                ids = [rng.choice(names) for _ in range(4)]
                w = comb(alg, (1, ids))
                # positions (1,2) and (3,4) are disjoint
                a = merge_factors(alg, merge_factors(alg, w, 3, 4), 1, 2)
                b = merge_factors(alg, merge_factors(alg, w, 1, 2), 2, 3)
                assert a == b


class TestDiagonal:
    def test_point(self, point):
        assert diagonal_class(point) == {point.word(["1", "1"]): Fraction(1)}

    def test_p1_from_hand_solved_system(self, p1):
        # the 2x2 defining system forces coefficient 1 on both mixed words
        assert diagonal_class(p1) == comb(p1, (1, ["1", "h"]), (1, ["h", "1"]))

    def test_elliptic_signs(self, elliptic):
        assert diagonal_class(elliptic) == comb(
            elliptic, (1, ["1", "t"]), (1, ["t", "1"]),
            (-1, ["a", "b"]), (1, ["b", "a"]),
        )

    def test_defining_symmetry_all_fixtures(self, all_fixtures):
        # (x (x) 1) Delta = (1 (x) x) Delta for every basis class x
        for alg in all_fixtures:
            delta = alg.diagonal_class()
            unit = alg.unit
            for b in alg.basis:
                left = tensor_multiply(alg, comb(alg, (1, [b.id, unit])), delta)
                right = tensor_multiply(alg, comb(alg, (1, [unit, b.id])), delta)
                assert left == right, (alg.name, b.id)

    def test_degree_and_type(self, all_fixtures):
        for alg in all_fixtures:
            d = alg.complex_dim
            for w in alg.diagonal_class():
                assert alg.word_degree(w) == 2 * d
                assert alg.word_type(w) == (d, d)

    def test_degenerate_pairing_raises(self):
        alg = fixtures.acyclic_extension()
        with pytest.raises(DegeneratePairingError):
            diagonal_class(alg)

    def test_integral_reads_fundamental(self, p1):
        assert integral(p1, comb(p1, (3, ["h"]))) == 3
        assert integral(p1, elem(p1, {"h": Fraction(5, 2)})) == Fraction(5, 2)


class TestPairingMatrices:
    def test_square_and_invertible(self, all_fixtures):
        from confhodge.linalg import RationalMatrix, rank

        for alg in all_fixtures:
            two_d = alg.top_degree
            for k in range(two_d + 1):
                rows = [i for i in range(alg.dim) if alg.degrees[i] == k]
                cols = [j for j in range(alg.dim) if alg.degrees[j] == two_d - k]
                assert len(rows) == len(cols), (alg.name, k)
                if not rows:
                    continue
                entries = []
                for r, i in enumerate(rows):
                    for c, j in enumerate(cols):
                        v = dict(alg.product(i, j)).get(alg.fundamental_index)
                        if v:
                            entries.append((r, c, v))
                m = RationalMatrix.from_entries(len(rows), len(cols), entries)
                assert rank(m) == len(rows), (alg.name, k)
