import pytest
from hypothesis import given, settings, strategies as st

from confhodge.arrangement import (
    DiagonalGraph,
    cech_sign,
    components,
    enumerate_strata,
    merge_descriptor,
    subsets_by_cardinality,
)
from confhodge.errors import ParseError


class TestGraph:
    def test_complete(self):
        g = DiagonalGraph.complete(3)
        assert g.edges == ((1, 2), (1, 3), (2, 3))
        assert g.is_complete()

    def test_parse_edge_list(self):
        g = DiagonalGraph.parse("2-3,1-2", 3)
        assert g.edges == ((1, 2), (2, 3))
        assert not g.is_complete()
        assert g.spec_string() == "1-2,2-3"

    def test_parse_edgeless(self):
        assert DiagonalGraph.parse("", 3).edges == ()
        assert DiagonalGraph.parse("edgeless", 2).edges == ()

    @pytest.mark.parametrize("bad", ["1-2-3", "0-1", "1-5", "1-1", "x-y", "1,2"])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            DiagonalGraph.parse(bad, 4)

    def test_duplicate_edges_rejected(self):
        with pytest.raises(ParseError):
            DiagonalGraph.parse("1-2,2-1", 3)


class TestComponents:
    def test_empty_subset(self):
        g = DiagonalGraph.complete(3)
        assert components(g, 0) == ((1,), (2,), (3,))

    def test_single_edge(self):
        g = DiagonalGraph.complete(3)
        # mask bit 0 is edge (1,2)
        assert components(g, 0b001) == ((1, 2), (3,))

    def test_spanning(self):
        g = DiagonalGraph.parse("1-2,2-3", 3)
        assert components(g, 0b11) == ((1, 2, 3),)

    def test_block_order_by_minimum(self):
        g = DiagonalGraph.parse("2-4,3-5", 5)
        assert components(g, 0b11) == ((1,), (2, 4), (3, 5))

    def test_monotone_under_refinement(self):
        g = DiagonalGraph.complete(4)
        for mask, part in enumerate_strata(g):
            for pos in range(g.num_edges):
                if mask >> pos & 1:
                    continue
                bigger = components(g, mask | (1 << pos))
                drop = len(part) - len(bigger)
                assert drop in (0, 1)
                assert (drop == 0) == (merge_descriptor(g, mask, pos) is None)


class TestMergeDescriptor:
    def test_identity_when_connected(self):
        g = DiagonalGraph.complete(3)
        # J = {(1,2),(2,3)} connects everything; adding (1,3) restricts nothing
        mask = 0b101  # edges (1,2) and (2,3)
        assert merge_descriptor(g, mask, 1) is None

    def test_simple_merge(self):
        g = DiagonalGraph.complete(3)
        assert merge_descriptor(g, 0, 2) == (2, 3)  # edge (2,3) out of nothing

    def test_block_indices_canonical(self):
        # n=4, J={(1,2)}: blocks {1,2},{3},{4}; edge (2,4) merges blocks 1 and 3
        g = DiagonalGraph.complete(4)
        mask = 0b000001  # edge (1,2) is position 0
        pos_24 = g.edges.index((2, 4))
        assert merge_descriptor(g, mask, pos_24) == (1, 3)

    def test_merged_partition_consistency(self):
        g = DiagonalGraph.complete(4)
        for mask, part in enumerate_strata(g):
            for pos in range(g.num_edges):
                if mask >> pos & 1:
                    continue
                desc = merge_descriptor(g, mask, pos)
                after = components(g, mask | (1 << pos))
                if desc is None:
                    assert after == part
                else:
                    u, v = desc
                    merged = sorted(part[u - 1] + part[v - 1])
                    rest = [b for k, b in enumerate(part) if k not in (u - 1, v - 1)]
                    expect = tuple(sorted([tuple(merged)] + rest, key=min))
                    assert after == expect

    def test_rejects_member_edge(self):
        g = DiagonalGraph.complete(3)
        with pytest.raises(ValueError):
            merge_descriptor(g, 0b001, 0)


class TestCechSign:
    def test_empty_subset_is_plus(self):
        g = DiagonalGraph.complete(4)
        for pos in range(g.num_edges):
            assert cech_sign(g, 0, pos) == 1

    def test_middle_position(self):
        # edges e0 < e1 < e2; J = {e0, e2}, adding e1 sits at position 2
        g = DiagonalGraph.complete(3)
        assert cech_sign(g, 0b101, 1) == -1

    def test_first_position(self):
        g = DiagonalGraph.complete(3)
        assert cech_sign(g, 0b110, 0) == 1

    def test_rejects_member_edge(self):
        g = DiagonalGraph.complete(3)
        with pytest.raises(ValueError):
            cech_sign(g, 0b010, 1)

    def test_square_zero_identity_exhaustive(self):
        # cech_sign(J,e) cech_sign(J+e,f) = -cech_sign(J,f) cech_sign(J+f,e)
        # for every graph shape with <= 6 edges the identity only depends on
        # the edge positions, so K4 (6 edges) covers all cases
        for g in [DiagonalGraph.complete(4), DiagonalGraph.parse("1-2,2-3,3-4", 4)]:
            for mask in subsets_by_cardinality(g.num_edges):
                free = [p for p in range(g.num_edges) if not mask >> p & 1]
                for e in free:
                    for f in free:
                        if e == f:
                            continue
                        lhs = cech_sign(g, mask, e) * cech_sign(g, mask | 1 << e, f)
                        rhs = cech_sign(g, mask, f) * cech_sign(g, mask | 1 << f, e)
                        assert lhs == -rhs

    @settings(deadline=None)
    @given(st.integers(min_value=0, max_value=2**10 - 1), st.data())
    def test_square_zero_identity_random(self, mask, data):
        g = DiagonalGraph.complete(5)  # 10 edges
        free = [p for p in range(10) if not mask >> p & 1]
        if len(free) < 2:
            return
        e = data.draw(st.sampled_from(free))
        f = data.draw(st.sampled_from([p for p in free if p != e]))
        lhs = cech_sign(g, mask, e) * cech_sign(g, mask | 1 << e, f)
        rhs = cech_sign(g, mask, f) * cech_sign(g, mask | 1 << f, e)
        assert lhs == -rhs


class TestEnumerateStrata:
    def test_two_points(self):
        g = DiagonalGraph.complete(2)
        items = list(enumerate_strata(g))
        assert [(m, len(p)) for m, p in items] == [(0, 2), (1, 1)]

    def test_k3_counts(self):
        g = DiagonalGraph.complete(3)
        items = list(enumerate_strata(g))
        assert len(items) == 8
        sizes = [len(p) for _, p in items]
        assert sizes == [3, 2, 2, 2, 1, 1, 1, 1]

    def test_path_counts(self):
        g = DiagonalGraph.parse("1-2,2-3", 3)
        sizes = [len(p) for _, p in enumerate_strata(g)]
        assert sizes == [3, 2, 2, 1]

    def test_each_subset_once(self):
        g = DiagonalGraph.complete(4)
        masks = [m for m, _ in enumerate_strata(g)]
        assert len(masks) == 2**6
        assert len(set(masks)) == 2**6

    def test_cardinality_then_lex(self):
        masks = list(subsets_by_cardinality(4))
        # {0,3} before {1,2} within cardinality 2
        i_03 = masks.index(0b1001)
        i_12 = masks.index(0b0110)
        assert i_03 < i_12
        counts = [m.bit_count() for m in masks]
        assert counts == sorted(counts)
