"""Builtin matrices and graph families used by ``check`` and the tests."""

from __future__ import annotations

from dataclasses import dataclass, field

from .covector import random_generic_lift
from .graphcore import BipartiteGraph, TropicalMatrix

inf = "inf"

RUNNING = TropicalMatrix.from_rows([[0, 3, inf, 0], [0, 0, 2, 3], [0, inf, 0, inf]])
RUNNING_DEGENERATE = TropicalMatrix.from_rows([[0, 0, inf, 0], [0, 0, 2, 3], [0, inf, 0, inf]])
THREE_BY_TWO = TropicalMatrix.from_rows([[0, 0], [0, 1], [0, 2]])
K32_LIFT = TropicalMatrix.from_rows([[0, 0], [0, 2], [0, 1]])
FOUR_CYCLE_GRAPHIC = TropicalMatrix.from_rows(
    [[0, inf, inf, 0], [0, 1, inf, inf], [inf, 2, 4, inf], [inf, inf, 6, 9]]
)
SIX_CYCLE = TropicalMatrix.from_rows([[0, 1, inf], [0, inf, 0], [inf, 0, 1]])


def graph(d: int, n: int, edges) -> BipartiteGraph:
    return BipartiteGraph(d, n, frozenset(edges))


def complete_bipartite(d: int, n: int) -> BipartiteGraph:
    return graph(d, n, ((i, j) for i in range(d) for j in range(n)))


def even_cycle(q: int) -> BipartiteGraph:
    """The cycle on 2q nodes, q >= 2."""
    return graph(q, q, [(i, i) for i in range(q)] + [(i, (i + 1) % q) for i in range(q)])


def even_path(n: int) -> BipartiteGraph:
    """The path on 2n nodes."""
    return graph(n, n, [(i, i) for i in range(n)] + [(i + 1, i) for i in range(n - 1)])


def chained_squares(k: int, closed: bool = False) -> BipartiteGraph:
    """k four-cycles linked in a row; ``closed`` adds one edge from the last to the first.

    Square ``c`` uses rows and columns ``2c, 2c+1``; the link from square
    ``c`` to ``c+1`` joins row ``2c`` to column ``2c+2``.
    """
    edges = []
    for c in range(k):
        edges += [(2 * c + a, 2 * c + b) for a in (0, 1) for b in (0, 1)]
    for c in range(k - 1):
        edges.append((2 * c, 2 * c + 2))
    if closed:
        edges.append((2 * (k - 1), 0))
    return graph(2 * k, 2 * k, edges)


def k2m_with_trees(m: int) -> BipartiteGraph:
    """K_{2,m} with a pendant path on row 0 and a pendant star on column 0."""
    edges = [(i, j) for i in range(2) for j in range(m)]
    # pendant path from row 0: row0 - col m - row 2 - col m+1
    edges += [(0, m), (2, m), (2, m + 1)]
    # two leaves hanging off column 0
    edges += [(3, 0), (4, 0)]
    return graph(5, m + 2, edges)


def theta_graph() -> BipartiteGraph:
    """Three disjoint 3-edge paths between row 0 and column 0."""
    edges = []
    for p in (1, 2, 3):
        edges += [(0, p), (p, p), (p, 0)]
    return graph(4, 4, edges)


@dataclass(frozen=True)
class Fixture:
    name: str
    matrix: TropicalMatrix
    expected: dict = field(default_factory=dict)


def _lift(name: str, B: BipartiteGraph, seed: int, **expected) -> Fixture:
    return Fixture(name, random_generic_lift(B, seed), expected)


def builtin_fixtures() -> list[Fixture]:
    out = [
        Fixture("running", RUNNING, {"lambda": 3, "generic": True}),
        Fixture("running-degenerate", RUNNING_DEGENERATE, {"lambda": 3, "generic": False}),
        Fixture("three-by-two", THREE_BY_TWO, {"lambda": 2, "bounded_f": (3, 2)}),
        Fixture("two-by-three", TropicalMatrix.from_rows([[0, 0, 0], [0, 1, 2]]),
                {"lambda": 2, "bounded_f": (3, 2)}),
        Fixture("k32-lift", K32_LIFT, {"lambda": 2, "generic": True}),
        Fixture("four-cycle-graphic", FOUR_CYCLE_GRAPHIC, {"lambda": 4}),
        Fixture("six-cycle", SIX_CYCLE, {"lambda": 3}),
        Fixture("single-entry", TropicalMatrix.from_rows([[0]]), {"lambda": 1, "generic": True}),
    ]
    out.append(_lift("k23", complete_bipartite(2, 3), 0, **{"lambda": 2}))
    out.append(_lift("k33", complete_bipartite(3, 3), 0, **{"lambda": 3}))
    out.append(_lift("k34", complete_bipartite(3, 4), 0, **{"lambda": 3}))
    out.append(_lift("cycle8", even_cycle(4), 0, **{"lambda": 4}))
    out.append(_lift("path6", even_path(3), 0, **{"lambda": 1}))
    out.append(_lift("chain2", chained_squares(2), 0, **{"lambda": 3}))
    out.append(_lift("chain2-closed", chained_squares(2, True), 0, **{"lambda": 4}))
    out.append(_lift("k23-trees", k2m_with_trees(3), 0, **{"lambda": 2}))
    out.append(_lift("theta", theta_graph(), 0, **{"lambda": 4}))
    return out


def fixture_by_name(name: str) -> Fixture:
    for fx in builtin_fixtures():
        if fx.name == name:
            return fx
    raise KeyError(name)


def random_connected_bipartite(rng, max_edges: int = 12, min_side: int = 2, max_side: int = 5) -> BipartiteGraph:
    """A random spanning tree on both sides plus random extra edges."""
    while True:
        d = rng.randint(min_side, max_side)
        n = rng.randint(min_side, max_side)
        if d + n - 1 <= max_edges:
            break
    nodes = [("L", i) for i in range(1, d)] + [("R", j) for j in range(1, n)]
    rng.shuffle(nodes)
    lefts, rights = [0], [0]
    edges = {(0, 0)}
    for side, k in nodes:
        if side == "L":
            edges.add((k, rng.choice(rights)))
            lefts.append(k)
        else:
            edges.add((rng.choice(lefts), k))
            rights.append(k)
    extra = [(i, j) for i in range(d) for j in range(n) if (i, j) not in edges]
    rng.shuffle(extra)
    edges.update(extra[: rng.randint(0, min(len(extra), max_edges - len(edges)))])
    return BipartiteGraph(d, n, frozenset(edges))
