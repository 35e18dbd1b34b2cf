import pytest

from confhodge.arrangement import DiagonalGraph
from confhodge.complexes import relative_cohomology
from confhodge.duality import lefschetz_dual
from confhodge.tables import OPEN, RELATIVE, HodgeTable


class TestLefschetzDual:
    def test_p1_two_points(self, p1):
        rel = relative_cohomology(p1, DiagonalGraph.complete(2))
        opened = lefschetz_dual(rel)
        assert opened.kind == OPEN
        assert opened.entries == {(0, 0, 0, 0): 1, (2, 2, 1, 1): 1}

    def test_p1_three_points(self, p1):
        # rationally a 3-sphere: one class in degree 0, one in degree 3
        opened = lefschetz_dual(relative_cohomology(p1, DiagonalGraph.complete(3)))
        assert opened.entries == {(0, 0, 0, 0): 1, (3, 4, 2, 2): 1}

    def test_empty_graph_self_reflection(self, p1xp1):
        # the compact X^n is its own Poincare dual
        rel = relative_cohomology(p1xp1, DiagonalGraph(2, ()))
        opened = lefschetz_dual(rel)
        assert opened.entries == rel.entries

    def test_involution(self, elliptic):
        rel = relative_cohomology(elliptic, DiagonalGraph.complete(2))
        back = lefschetz_dual(lefschetz_dual(rel))
        assert back.kind == RELATIVE
        assert back.entries == rel.entries

    def test_open_invariants_all_fixtures(self, all_fixtures):
        graphs = [
            DiagonalGraph.complete(2),
            DiagonalGraph.complete(3),
            DiagonalGraph.parse("1-2,2-3", 3),
            DiagonalGraph.parse("1-3", 3),
        ]
        for alg in all_fixtures:
            for graph in graphs:
                opened = lefschetz_dual(relative_cohomology(alg, graph))
                assert opened.purity_violations() == []
                assert opened.hodge_symmetry_violations() == []
                assert opened.open_bound_violations() == [], (alg.name, graph.spec_string())

    def test_degree_out_of_range_rejected(self):
        table = HodgeTable(RELATIVE, 1, 1, entries={(5, 5, 3, 2): 1})
        with pytest.raises(ValueError):
            lefschetz_dual(table)
