"""Root polytopes, regular subdivisions and generalized permutohedra.

All subdivision data is read off the tropical complex: the cell of the
regular subdivision dual to a cell of type ``T`` is the subgraph ``B_T``,
and its Cayley image in the generalized permutohedron is the Minkowski sum
of the simplices on the column neighbourhoods of ``T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .covector import TropicalComplex, enumerate_cells, is_sufficiently_generic
from .errors import NotConnected, NotGraphic, RequiresGeneric
from .graphcore import (
    INF,
    BipartiteGraph,
    Graph,
    TropicalMatrix,
    degree_vectors,
    support_graph,
)


@dataclass(frozen=True)
class RootPolytope:
    base: BipartiteGraph
    vertices: tuple  # one vector e_i - e_{d+j} per edge, in sorted edge order

    @property
    def edges(self):
        return self.base.sorted_edges()


@dataclass(frozen=True)
class SubdivisionCell:
    edges: frozenset

    def is_spanning_tree(self, d: int, n: int) -> bool:
        return len(self.edges) == d + n - 1 and BipartiteGraph(d, n, self.edges).is_connected()


@dataclass(frozen=True)
class MixedCell:
    summands: tuple  # (I_1, ..., I_n), each a sorted tuple of row indices


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex stored by its facets; faces are implicit."""

    vertices: tuple
    facets: tuple

    @classmethod
    def from_facets(cls, vertices, facets) -> "SimplicialComplex":
        sets = {frozenset(f) for f in facets}
        maximal = [f for f in sets if not any(f < g for g in sets)]
        maximal.sort(key=lambda f: (-len(f), sorted(f)))
        return cls(tuple(vertices), tuple(maximal))

    def is_face(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1


def root_polytope(B: BipartiteGraph) -> RootPolytope:
    size = B.d + B.n
    verts = []
    for i, j in B.sorted_edges():
        v = [0] * size
        v[i] = 1
        v[B.d + j] = -1
        verts.append(tuple(v))
    return RootPolytope(B, tuple(verts))


def _connected_complex(A: TropicalMatrix) -> TropicalComplex:
    if not support_graph(A).is_connected():
        raise NotConnected("subdivision data needs a connected support graph")
    return enumerate_cells(A)


def regular_subdivision(A: TropicalMatrix) -> list[SubdivisionCell]:
    """One cell per cell of C(A), largest (dual to vertices) first."""
    cx = _connected_complex(A)
    return [SubdivisionCell(c.type.selected) for c in cx.cells]


def maximal_cells(A: TropicalMatrix) -> list[SubdivisionCell]:
    cx = _connected_complex(A)
    return [SubdivisionCell(c.type.selected) for c in cx.vertices()]


def crosscut_complex(A: TropicalMatrix) -> SimplicialComplex:
    B = support_graph(A)
    return SimplicialComplex.from_facets(B.sorted_edges(), (c.edges for c in maximal_cells(A)))


def mixed_subdivision(A: TropicalMatrix) -> list[MixedCell]:
    cx = _connected_complex(A)
    return [MixedCell(tuple(c.type.column(k) for k in range(A.n))) for c in cx.cells]


def lattice_points(B: BipartiteGraph) -> set[tuple[int, ...]]:
    """Sums of one unit vector per column neighbourhood."""
    neighbourhoods = [B.right_neighbors(j) for j in range(B.n)]
    points = set()
    for choice in product(*neighbourhoods):
        v = [0] * B.d
        for i in choice:
            v[i] += 1
        points.add(tuple(v))
    return points


def _require_generic(A: TropicalMatrix) -> TropicalComplex:
    cx = _connected_complex(A)
    if not is_sufficiently_generic(A, cx):
        raise RequiresGeneric("this invariant needs a sufficiently generic matrix")
    return cx


def volume(A: TropicalMatrix) -> Fraction:
    """Volume of P_B, one unit per unimodular simplex of each mixed cell."""
    cx = _require_generic(A)
    total = Fraction(0)
    for cell in cx.vertices():
        term = Fraction(1)
        for deg in degree_vectors(cell.type.graph()).right:
            term /= factorial(deg - 1)
        total += term
    return total


def draconian_sequences(A: TropicalMatrix) -> set[tuple[int, ...]]:
    cx = _require_generic(A)
    return {
        tuple(deg - 1 for deg in degree_vectors(cell.type.graph()).right)
        for cell in cx.vertices()
    }


def is_graphic(A: TropicalMatrix) -> bool:
    return all(len(A.column_support(k)) == 2 for k in range(A.n))


def zonotope_graph(A: TropicalMatrix) -> Graph:
    """Rows as vertices, one edge per column."""
    if not is_graphic(A):
        raise NotGraphic("every column needs exactly two finite entries")
    return Graph(A.d, tuple(A.column_support(k) for k in range(A.n)))


def graphic_matrix(G: Graph, weights=None) -> TropicalMatrix:
    """A graphic matrix whose columns are the edges of ``G``."""
    rows = [[INF] * len(G.edges) for _ in range(G.order)]
    for k, (a, b) in enumerate(G.edges):
        wa, wb = (0, k + 1) if weights is None else weights[k]
        rows[a][k] = Fraction(wa)
        rows[b][k] = Fraction(wb)
    return TropicalMatrix(tuple(tuple(r) for r in rows))
