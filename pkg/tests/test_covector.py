from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from troprez.covector import (
    CLOSED,
    RELATIVELY_OPEN,
    DifferenceSystem,
    TypeGraph,
    bounded_complex,
    cell_feasible,
    cell_system,
    closed_systems_jointly_feasible,
    coarse_type,
    enumerate_cells,
    is_sufficiently_generic,
    random_generic_lift,
    type_at_point,
    witness_point,
)
from troprez.errors import InvalidType, NoWitness, NotConnected, TooLarge
from troprez.fixtures import RUNNING, RUNNING_DEGENERATE, THREE_BY_TWO, complete_bipartite, graph
from troprez.graphcore import TropicalMatrix, support_graph, transpose
from troprez.linalg import bareiss_rank

inf = "inf"


def E(*codes: int) -> frozenset:
    """1-based two digit edge codes to 0-based pairs."""
    return frozenset((c // 10 - 1, c % 10 - 1) for c in codes)


def equality_dimension(A: TropicalMatrix, T: TypeGraph) -> int:
    """Dimension of a relatively open cell from the rank of its equalities."""
    rows = []
    for k in range(A.n):
        sel = T.column(k)
        for a, b in zip(sel, sel[1:]):
            v = [0] * A.d
            v[a], v[b] = 1, -1
            rows.append(v)
    return A.d - 1 - (bareiss_rank(rows) if rows else 0)


def recession_cone_trivial(A: TropicalMatrix, T: TypeGraph) -> bool:
    """The closed cell is bounded iff x_i <= x_j constraints force all coordinates equal."""
    G = nx.DiGraph()
    G.add_nodes_from(range(A.d))
    for k in range(A.n):
        for j in T.column(k):
            for i in A.column_support(k):
                if i != j:
                    G.add_edge(i, j)
    return nx.is_strongly_connected(G)


def line_types(A: TropicalMatrix) -> set[frozenset]:
    """All types met along the line p = (0, t) for d = 2."""
    breaks = sorted({A.rows[1][k] - A.rows[0][k] for k in range(A.n)
                     if A.rows[0][k] != float("inf") and A.rows[1][k] != float("inf")})
    ts = [Fraction(0)] if not breaks else [breaks[0] - 1, breaks[-1] + 1]
    ts += breaks + [(a + b) / 2 for a, b in zip(breaks, breaks[1:])]
    return {type_at_point(A, (0, t)).selected for t in ts}


def test_type_at_apex_of_first_column():
    T = type_at_point(RUNNING, (0, 0, 0))
    assert E(11, 21, 31) <= T.selected
    assert T.selected == E(11, 21, 31, 22, 33, 14)
    assert coarse_type(T).t == (2, 2, 2)


def test_type_far_along_first_coordinate():
    T = type_at_point(RUNNING, (1000, 0, 0))
    assert {(i, k) for i, k in T.selected if k != 2} == E(11, 12, 14)
    assert len(T.column(2)) >= 1  # row 1 has no entry in column 3
    T = type_at_point(RUNNING, (0, 1000, 2000))
    assert all(len(T.column(k)) == 1 for k in range(4))


def test_type_invariant_under_translation():
    rng = random.Random(1)
    for _ in range(30):
        p = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(3)]
        shifted = [x + Fraction(7, 2) for x in p]
        assert type_at_point(RUNNING, p) == type_at_point(RUNNING, shifted)


def test_coarse_type_is_left_degree():
    B = support_graph(RUNNING)
    assert coarse_type(TypeGraph(B, B.edges)).t == (3, 4, 2)
    first_row = TypeGraph(B, E(11, 12, 14, 23))
    assert coarse_type(first_row).t == (3, 1, 0)


def test_type_graph_requires_every_column():
    B = support_graph(RUNNING)
    with pytest.raises(InvalidType):
        TypeGraph(B, E(11, 12, 14))
    with pytest.raises(InvalidType):
        TypeGraph(B, E(11, 12, 14, 23, 13))


def test_full_type_is_infeasible_when_closed():
    B = support_graph(RUNNING)
    T = TypeGraph(B, B.edges)
    assert not cell_feasible(RUNNING, T, CLOSED)
    # the violated cycle: columns 1 and 2 force x1 - x2 = 0 and x1 - x2 = 3
    assert not cell_feasible(RUNNING, TypeGraph(B, E(11, 21, 12, 22, 23, 14)), CLOSED)


def test_single_hyperplane_realizes_every_sector_set():
    A = TropicalMatrix.from_rows([[0], [1], [5]])
    B = support_graph(A)
    for mask in range(1, 8):
        sel = {(i, 0) for i in range(3) if mask >> i & 1}
        T = TypeGraph(B, sel)
        assert cell_feasible(A, T, RELATIVELY_OPEN)
        assert cell_feasible(A, T, CLOSED)
        assert type_at_point(A, witness_point(A, T)) == T


def test_witness_round_trip_and_errors():
    T = type_at_point(RUNNING, (0, 0, 0))
    assert cell_feasible(RUNNING, T)
    p = witness_point(RUNNING, T)
    assert p[0] == 0 and type_at_point(RUNNING, p) == T
    B = support_graph(RUNNING)
    with pytest.raises(NoWitness):
        witness_point(RUNNING, TypeGraph(B, B.edges))


def test_difference_system_strictness():
    s = DifferenceSystem(2)
    s.add(0, 1, 0)
    s.add(1, 0, 0)
    assert s.feasible()
    s.add(1, 0, 0, strict=True)
    assert not s.feasible()
    t = DifferenceSystem(3)
    t.add(0, 1, Fraction(1, 3), strict=True)
    t.add(1, 2, Fraction(1, 3), strict=True)
    t.add(2, 0, Fraction(-1, 2))
    assert t.feasible()
    x = t.solution()
    assert x[0] - x[1] < Fraction(1, 3) and x[1] - x[2] < Fraction(1, 3) and x[2] - x[0] <= Fraction(-1, 2)
    t.add(2, 0, Fraction(-2, 3))  # the cycle now sums to zero with strict arcs
    assert not t.feasible()


def test_running_example_complex():
    cx = enumerate_cells(RUNNING)
    assert len(cx.vertices()) == 6
    assert cx.f_vector() == (6, 16, 11)
    bc = bounded_complex(RUNNING)
    assert bc.dim == 2 and len(bc.vertices()) == 6
    f = bc.f_vector()
    assert sum((-1) ** k * x for k, x in enumerate(f)) == 1


def test_one_hyperplane_on_a_line():
    A = TropicalMatrix.from_rows([[0], [0]])
    cx = enumerate_cells(A)
    assert cx.f_vector() == (1, 2)
    A3 = TropicalMatrix.from_rows([[0], [0], [0]])
    assert enumerate_cells(A3).f_vector() == (1, 3, 3)


def test_duality_example_counts():
    assert bounded_complex(THREE_BY_TWO).f_vector() == (3, 2)
    assert bounded_complex(transpose(THREE_BY_TWO)).f_vector() == (3, 2)


def test_disconnected_support_has_empty_bounded_complex():
    A = TropicalMatrix.from_rows([[0, inf], [inf, 0]])
    assert bounded_complex(A).cells == ()
    with pytest.raises(NotConnected):
        is_sufficiently_generic(A)


def test_single_entry_matrix():
    A = TropicalMatrix.from_rows([[0]])
    cx = enumerate_cells(A)
    assert len(cx.cells) == 1 and cx.cells[0].dim == 0 and cx.cells[0].bounded
    assert is_sufficiently_generic(A)
    wide = TropicalMatrix.from_rows([[0, 4, 7]])
    assert enumerate_cells(wide).f_vector() == (1,)


def test_genericity_flags():
    assert is_sufficiently_generic(RUNNING)
    assert not is_sufficiently_generic(RUNNING_DEGENERATE)


def test_random_lift_is_deterministic_and_generic():
    B = support_graph(RUNNING)
    A1 = random_generic_lift(B, seed=3)
    assert A1 == random_generic_lift(B, seed=3)
    assert support_graph(A1) == B and is_sufficiently_generic(A1)
    assert bounded_complex(A1).dim == 2
    tree = graph(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)])
    assert is_sufficiently_generic(random_generic_lift(tree, seed=0))


def test_enumeration_cap():
    A = random_generic_lift(complete_bipartite(4, 4), seed=1)
    with pytest.raises(TooLarge):
        enumerate_cells(A, cap=15)


def test_line_arrangements_match_walk_along_the_line():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 5)
        rows = [[rng.choice([0, 1, 2, 3, inf]) for _ in range(n)] for _ in range(2)]
        for k in range(n):
            if rows[0][k] == inf and rows[1][k] == inf:
                rows[0][k] = 0
        A = TropicalMatrix.from_rows(rows)
        enumerated = {c.type.selected for c in enumerate_cells(A).cells}
        assert enumerated == line_types(A)


def test_sampled_points_land_in_enumerated_cells():
    rng = random.Random(5)
    for A in (RUNNING, RUNNING_DEGENERATE, random_generic_lift(complete_bipartite(3, 3), seed=2)):
        cx = enumerate_cells(A)
        enumerated = {c.type.selected for c in cx.cells}
        top = {c.type.selected for c in cx.cells if c.dim == A.d - 1}
        hits = set()
        scale = max(abs(x) for row in A.rows for x in row if x != float("inf")) + 5
        for _ in range(3000):
            p = [0] + [Fraction(rng.randint(-40 * int(scale), 40 * int(scale)), 17) for _ in range(A.d - 1)]
            T = type_at_point(A, p).selected
            assert T in enumerated
            hits.add(T)
        assert top <= hits


def test_cell_records_against_independent_formulas():
    rng = random.Random(6)
    for trial in range(25):
        d, n = rng.randint(2, 4), rng.randint(1, 4)
        rows = [[rng.choice([0, 1, 2, 5, inf, Fraction(1, 2)]) for _ in range(n)] for _ in range(d)]
        for k in range(n):
            if all(rows[i][k] == inf for i in range(d)):
                rows[0][k] = 0
        A = TropicalMatrix.from_rows(rows)
        for c in enumerate_cells(A).cells:
            assert c.dim == equality_dimension(A, c.type), trial
            assert c.bounded == recession_cone_trivial(A, c.type), trial
            assert type_at_point(A, c.witness) == c.type
            assert c.witness[0] == 0


def test_bounded_edges_have_two_vertices():
    cx = bounded_complex(RUNNING)
    for a, c in enumerate(cx.cells):
        if c.dim == 1:
            faces = [f for f, co in cx.hasse if co == a]
            assert len(faces) == 2


def test_closed_cells_intersect_by_type_union():
    cx = enumerate_cells(RUNNING)
    cells = list(cx.cells)
    for S in cells:
        for T in cells:
            union = TypeGraph(S.type.base, S.type.selected | T.type.selected)
            assert cell_feasible(RUNNING, union, CLOSED) == closed_systems_jointly_feasible(
                RUNNING, S.type, T.type
            )


def test_containment_is_reverse_inclusion():
    cx = enumerate_cells(RUNNING)
    for face, coface in cx.hasse:
        small, big = cx.cells[face], cx.cells[coface]
        assert cx.contains(small, big)
        # the face's witness satisfies the closed system of the bigger cell
        system = cell_system(RUNNING, big.type, CLOSED)
        x = small.witness
        assert all(x[c.i] - x[c.j] <= c.w for c in system.constraints)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.sampled_from([0, 1, 2, 3, 7, None]), min_size=3, max_size=3),
                min_size=2, max_size=3))
def test_property_witnesses_round_trip(columns):
    rows = [list(r) for r in zip(*columns)]
    for k in range(len(columns)):
        if all(rows[i][k] is None for i in range(3)):
            rows[0][k] = 0
    A = TropicalMatrix.from_rows(rows)
    cx = enumerate_cells(A)
    seen = set()
    for c in cx.cells:
        assert type_at_point(A, c.witness) == c.type
        assert c.type.selected not in seen
        seen.add(c.type.selected)
    assert all(c.bounded for c in cx.vertices())
