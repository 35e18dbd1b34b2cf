"""Combinatorics of diagonal arrangements in a Cartesian power.

A graph G on vertices {1..n} selects the diagonals D_ij = {x_i = x_j},
one per edge.  A subset J of the edge set indexes the stratum
D_J = intersection of the selected diagonals, and D_J is a Cartesian power
X^c where c is the number of connected components of ({1..n}, J).

Edge subsets are bitmasks over the graph's (lexicographically sorted) edge
list; that fixed order is what makes the Cech signs and all downstream
matrix layouts reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ParseError

Edge = tuple[int, int]
Partition = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DiagonalGraph:
    """A graph on {1..n} whose edges name the removed diagonals."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParseError(f"need at least one point, got n={self.n}")
        seen = set()
        prev = None
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise ParseError(f"edge ({i},{j}) out of range for n={self.n}")
            if (i, j) in seen:
                raise ParseError(f"duplicate edge ({i},{j})")
            if prev is not None and (i, j) < prev:
                raise ParseError("edges must be sorted lexicographically")
            seen.add((i, j))
            prev = (i, j)

    @classmethod
    def complete(cls, n: int) -> "DiagonalGraph":
        return cls(n, tuple(combinations(range(1, n + 1), 2)))

    @classmethod
    def from_edges(cls, n: int, edges) -> "DiagonalGraph":
        norm = sorted((min(i, j), max(i, j)) for i, j in edges)
        return cls(n, tuple(norm))

    @classmethod
    def parse(cls, spec: str, n: int) -> "DiagonalGraph":
        """Parse a graph spec: "complete", or an edge list like "1-2,2-3".

        The empty string (or "edgeless") denotes the graph with no edges.
        """
        spec = spec.strip()
        if spec == "complete":
            return cls.complete(n)
        if spec in ("", "edgeless"):
            return cls(n, ())
        edges = []
        for part in spec.split(","):
            part = part.strip()
            pieces = part.split("-")
            if len(pieces) != 2:
                raise ParseError(f"bad edge {part!r}; expected like 1-2")
            try:
                i, j = int(pieces[0]), int(pieces[1])
            except ValueError:
                raise ParseError(f"bad edge {part!r}; vertex labels must be integers") from None
            if i == j:
                raise ParseError(f"bad edge {part!r}; loops not allowed")
            edges.append((min(i, j), max(i, j)))
        return cls.from_edges(n, edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def spec_string(self) -> str:
        if self.is_complete() and self.n >= 2:
            return "complete"
        return ",".join(f"{i}-{j}" for i, j in self.edges)

    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1


def components(graph: DiagonalGraph, mask: int) -> Partition:
    """Connected components of ({1..n}, J), blocks sorted and ordered by minimum.

    Union-find with path compression; the canonical block order is what
    merge_descriptor's block indices refer to.
    """
    if mask < 0 or mask > graph.full_mask():
        raise ValueError(f"mask {mask:#x} out of range for {graph.num_edges} edges")
    parent = list(range(graph.n + 1))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for k, (i, j) in enumerate(graph.edges):
        if mask >> k & 1:
            ri, rj = find(i), find(j)
            if ri != rj:
                if ri > rj:
                    ri, rj = rj, ri
                parent[rj] = ri
    blocks: dict[int, list[int]] = {}
    for v in range(1, graph.n + 1):
        blocks.setdefault(find(v), []).append(v)
    return tuple(tuple(blocks[r]) for r in sorted(blocks))


def merge_descriptor(graph: DiagonalGraph, mask: int, edge_pos: int):
    """How the stratum map X^c(J) <- X^c(J u {e}) pulls back along edge e.

    Returns None when e's endpoints already lie in one block of
    components(J) (the restriction is the identity), else the 1-based pair
    (u, v), u < v, of canonical block indices that e merges.
    """
    if mask >> edge_pos & 1:
        raise ValueError(f"edge position {edge_pos} already in subset")
    part = components(graph, mask)
    i, j = graph.edges[edge_pos]
    bi = bj = None
    for b, block in enumerate(part):
        if i in block:
            bi = b
        if j in block:
            bj = b
    if bi == bj:
        return None
    return (min(bi, bj) + 1, max(bi, bj) + 1)


def cech_sign(graph: DiagonalGraph, mask: int, edge_pos: int) -> int:
    """Sign of the component J -> J u {e} of the Cech differential.

    With l the 1-based position of e in the sorted list J u {e}, the sign
    is (-1)^(l+1); in particular +1 out of the empty subset.
    """
    if mask >> edge_pos & 1:
        raise ValueError(f"edge position {edge_pos} already in subset")
    l = 1 + (mask & ((1 << edge_pos) - 1)).bit_count()
    return 1 if l % 2 == 1 else -1


def subsets_by_cardinality(num_edges: int):
    """All bitmasks over num_edges positions, cardinality first, then lex.

    Lex order on subsets of equal size compares the sorted position lists,
    so {0,3} precedes {1,2}.
    """
    for size in range(num_edges + 1):
        for combo in combinations(range(num_edges), size):
            mask = 0
            for pos in combo:
                mask |= 1 << pos
            yield mask


def enumerate_strata(graph: DiagonalGraph):
    """Yield (mask, partition) for every edge subset, in deterministic order."""
    for mask in subsets_by_cardinality(graph.num_edges):
        yield mask, components(graph, mask)
