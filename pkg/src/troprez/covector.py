"""Types of points, cell feasibility and enumeration of the tropical complex.

A point ``p`` lies in sector ``i`` of hyperplane ``k`` when
``p_i - a_ik >= p_j - a_jk`` for every ``j`` in the support of column ``k``.
Fixing which sectors a point occupies gives a system of difference
constraints, some strict.  Strictness is handled exactly: all weights are
scaled to integers by ``L * K`` (``L`` clears denominators, ``K = d + 1``
exceeds any simple cycle length) and each strict edge loses one unit, so a
simple cycle is negative iff its true weight is negative, or zero with at
least one strict edge.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    GenericityFailure,
    InvalidType,
    NoWitness,
    NotConnected,
    TooLarge,
)
from .graphcore import (
    INF,
    BipartiteGraph,
    Edge,
    TropicalMatrix,
    degree_vectors,
    is_strongly_connected,
    recession_graph,
    support_graph,
)

ENUMERATION_CAP = 22
RELATIVELY_OPEN = "relatively-open"
CLOSED = "closed"


_cap_override: int | None = None


def enumeration_cap() -> int:
    if _cap_override is not None:
        return _cap_override
    return int(os.environ.get("TROPREZ_CAP", ENUMERATION_CAP))


def set_enumeration_cap(cap: int | None) -> None:
    """Override the cap for this process; ``None`` restores the default."""
    global _cap_override
    _cap_override = cap


@dataclass(frozen=True)
class TypeGraph:
    """Selected edges of the support graph; the cotype is the rest."""

    base: BipartiteGraph
    selected: frozenset

    def __post_init__(self):
        sel = frozenset(tuple(e) for e in self.selected)
        object.__setattr__(self, "selected", sel)
        if not sel <= self.base.edges:
            raise InvalidType("selected edges are not in the support graph")
        covered = {j for _, j in sel}
        missing = [j + 1 for j in range(self.base.n) if j not in covered]
        if missing:
            raise InvalidType(f"columns {missing} have no selected edge")

    @property
    def cotype(self) -> frozenset:
        return self.base.edges - self.selected

    def graph(self) -> BipartiteGraph:
        return BipartiteGraph(self.base.d, self.base.n, self.selected)

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(sorted(i for i, j in self.selected if j == k))

    def sort_key(self):
        return sorted(self.selected)


@dataclass(frozen=True)
class CoarseType:
    t: tuple[int, ...]


@dataclass(frozen=True)
class Constraint:
    """``x_i - x_j <= w``, strict when flagged."""

    i: int
    j: int
    w: Fraction
    strict: bool = False


@dataclass
class DifferenceSystem:
    variables: int
    constraints: list = field(default_factory=list)

    def add(self, i: int, j: int, w, strict: bool = False) -> None:
        if i == j:
            raise ValueError("a difference constraint needs two distinct variables")
        self.constraints.append(Constraint(i, j, Fraction(w), strict))

    def _engine(self) -> "_Potentials" | None:
        denom = 1
        for c in self.constraints:
            denom = math.lcm(denom, c.w.denominator)
        eng = _Potentials(self.variables, denom)
        for c in self.constraints:
            if not eng.add(c.i, c.j, c.w, c.strict):
                return None
        return eng

    def feasible(self) -> bool:
        return self._engine() is not None

    def solution(self) -> list[Fraction]:
        eng = self._engine()
        if eng is None:
            raise NoWitness("difference system is infeasible")
        return eng.point()


class _Potentials:
    """Incremental all-pairs shortest paths on the constraint digraph.

    Constraint ``x_i - x_j <= w`` is the arc ``j -> i`` with weight ``w``.
    """

    __slots__ = ("size", "scale", "unit", "dist")

    def __init__(self, size: int, denom: int):
        self.size = size
        self.unit = size + 1
        self.scale = denom * self.unit
        self.dist = [[0 if a == b else INF for b in range(size)] for a in range(size)]

    def copy(self) -> "_Potentials":
        other = _Potentials.__new__(_Potentials)
        other.size, other.unit, other.scale = self.size, self.unit, self.scale
        other.dist = [row[:] for row in self.dist]
        return other

    def add(self, i: int, j: int, w: Fraction, strict: bool) -> bool:
        """Add ``x_i - x_j <= w``; False when this closes a negative cycle."""
        weight = w * self.scale
        assert weight.denominator == 1
        weight = int(weight) - (1 if strict else 0)
        dist = self.dist
        if dist[i][j] + weight < 0:
            return False
        if dist[j][i] <= weight:
            return True
        col_j = [dist[a][j] for a in range(self.size)]
        row_i = dist[i]
        for a in range(self.size):
            base = col_j[a]
            if base == INF:
                continue
            base += weight
            row_a = dist[a]
            for b in range(self.size):
                cand = base + row_i[b]
                if cand < row_a[b]:
                    row_a[b] = cand
        return True

    def point(self) -> list[Fraction]:
        dist = self.dist
        pot = [min(dist[u][v] for u in range(self.size)) for v in range(self.size)]
        shift = pot[0]
        return [Fraction(int(x - shift), self.scale) for x in pot]


def _scale_denominator(A: TropicalMatrix) -> int:
    denom = 1
    for row in A.rows:
        for x in row:
            if x != INF:
                denom = math.lcm(denom, x.denominator)
    return denom


# ----------------------------------------------------------- point types


def type_at_point(A: TropicalMatrix, p: Sequence) -> TypeGraph:
    if len(p) != A.d:
        raise ValueError(f"point has {len(p)} coordinates, expected {A.d}")
    p = [Fraction(x) for x in p]
    selected = []
    for k in range(A.n):
        supp = A.column_support(k)
        vals = {i: p[i] - A.rows[i][k] for i in supp}
        best = max(vals.values())
        selected.extend((i, k) for i in supp if vals[i] == best)
    return TypeGraph(support_graph(A), frozenset(selected))


def coarse_type(T: TypeGraph) -> CoarseType:
    return CoarseType(degree_vectors(T.graph()).left)


# --------------------------------------------------------- feasibility


def _column_constraints(A: TropicalMatrix, k: int, chosen: Iterable[int], closed: bool):
    supp = A.column_support(k)
    chosen = set(chosen)
    for j in sorted(chosen):
        for i in supp:
            if i != j:
                yield i, j, A.rows[i][k] - A.rows[j][k], (not closed and i not in chosen)


def cell_system(A: TropicalMatrix, T: TypeGraph, mode: str = RELATIVELY_OPEN) -> DifferenceSystem:
    if mode not in (RELATIVELY_OPEN, CLOSED):
        raise ValueError(f"unknown mode {mode!r}")
    if T.base != support_graph(A):
        raise InvalidType("type graph is not over the support of A")
    system = DifferenceSystem(A.d)
    for k in range(A.n):
        for i, j, w, strict in _column_constraints(A, k, T.column(k), mode == CLOSED):
            system.add(i, j, w, strict)
    return system


def cell_feasible(A: TropicalMatrix, T: TypeGraph, mode: str = RELATIVELY_OPEN) -> bool:
    return cell_system(A, T, mode).feasible()


def witness_point(A: TropicalMatrix, T: TypeGraph) -> list[Fraction]:
    """A rational point of type exactly ``T`` with first coordinate 0."""
    system = cell_system(A, T, RELATIVELY_OPEN)
    point = system.solution()
    if type_at_point(A, point) != T:
        raise NoWitness("constructed point does not realize the type")
    return point


def closed_systems_jointly_feasible(A: TropicalMatrix, S: TypeGraph, T: TypeGraph) -> bool:
    joint = cell_system(A, S, CLOSED)
    joint.constraints.extend(cell_system(A, T, CLOSED).constraints)
    return joint.feasible()


# ---------------------------------------------------------- enumeration


@dataclass(frozen=True)
class CellRecord:
    type: TypeGraph
    dim: int
    bounded: bool
    witness: tuple

    @property
    def cotype(self) -> frozenset:
        return self.type.cotype


@dataclass(frozen=True)
class TropicalComplex:
    matrix: TropicalMatrix
    cells: tuple

    def by_dim(self, k: int) -> list[CellRecord]:
        return [c for c in self.cells if c.dim == k]

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.by_dim(k)) for k in range(self.dim + 1))

    def vertices(self) -> list[CellRecord]:
        return self.by_dim(0)

    @cached_property
    def hasse(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(face, coface)`` of cell indices, codimension one."""
        pairs = []
        for a, face in enumerate(self.cells):
            for b, coface in enumerate(self.cells):
                if face.dim + 1 == coface.dim and face.type.selected > coface.type.selected:
                    pairs.append((a, b))
        return tuple(pairs)

    def contains(self, small: CellRecord, big: CellRecord) -> bool:
        """Closed-cell containment: smaller cells have larger types."""
        return small.type.selected >= big.type.selected


def _cell_record(A: TropicalMatrix, B: BipartiteGraph, selected: frozenset, point) -> CellRecord:
    T = TypeGraph(B, selected)
    dim = T.graph().components() - 1
    bounded = is_strongly_connected(recession_graph(selected, B))
    return CellRecord(T, dim, bounded, tuple(point))


def enumerate_cells(A: TropicalMatrix, cap: int | None = None) -> TropicalComplex:
    cap = enumeration_cap() if cap is None else cap
    B = support_graph(A)
    if len(B) > cap:
        raise TooLarge(f"|E(B_A)| = {len(B)} exceeds the enumeration cap {cap}")
    supports = [A.column_support(k) for k in range(A.n)]
    # columns with the most choices go last so pruning bites early
    order = sorted(range(A.n), key=lambda k: (len(supports[k]), k))
    options = {
        k: [c for r in range(1, len(supports[k]) + 1) for c in combinations(supports[k], r)]
        for k in order
    }
    root = _Potentials(A.d, _scale_denominator(A))
    found: list[CellRecord] = []
    chosen: list[Edge] = []

    def rec(level: int, eng: _Potentials) -> None:
        if level == len(order):
            selected = frozenset(chosen)
            found.append(_cell_record(A, B, selected, eng.point()))
            return
        k = order[level]
        for pick in options[k]:
            nxt = eng.copy()
            if all(nxt.add(i, j, w, s) for i, j, w, s in _column_constraints(A, k, pick, False)):
                chosen.extend((i, k) for i in pick)
                rec(level + 1, nxt)
                del chosen[len(chosen) - len(pick):]

    rec(0, root)
    found.sort(key=lambda c: (c.dim, sorted(c.type.selected)))
    for cell in found:
        if type_at_point(A, cell.witness) != cell.type:
            raise NoWitness("enumerated witness failed to round-trip")
    return TropicalComplex(A, tuple(found))


def bounded_complex(A: TropicalMatrix, cap: int | None = None) -> TropicalComplex:
    full = enumerate_cells(A, cap)
    return TropicalComplex(A, tuple(c for c in full.cells if c.bounded))


# ----------------------------------------------------------- genericity


def is_sufficiently_generic(A: TropicalMatrix, complex_: TropicalComplex | None = None) -> bool:
    B = support_graph(A)
    if not B.is_connected():
        raise NotConnected("genericity is defined for connected support graphs")
    cx = enumerate_cells(A) if complex_ is None else complex_
    spanning = A.d + A.n - 1
    return all(len(c.type.selected) == spanning for c in cx.vertices())


def random_generic_lift(
    B: BipartiteGraph,
    seed=0,
    budget: int = 50,
    spread: int = 10_000,
) -> TropicalMatrix:
    """Random integer entries on the support of ``B`` until the result is generic."""
    if not B.is_connected():
        raise NotConnected("lifts are only generic for connected graphs")
    rng = random.Random(seed)
    for _ in range(budget):
        rows = [[INF] * B.n for _ in range(B.d)]
        for i, j in B.sorted_edges():
            rows[i][j] = Fraction(rng.randrange(spread))
        A = TropicalMatrix(tuple(tuple(r) for r in rows))
        if is_sufficiently_generic(A):
            return A
    raise GenericityFailure(f"no generic lift found in {budget} attempts")
