"""Tropical matrices, bipartite support graphs and recession connectivity.

Left nodes of a bipartite graph are the rows ``0..d-1`` of a tropical
matrix, right nodes the columns ``0..n-1``.  An edge is the pair ``(i, j)``.
Everything is 0-based internally; serialization adds 1.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    InvalidMatrix,
    InvalidSubgraph,
    InvalidTranspose,
    NotConnected,
    TooLarge,
)
from .linalg import bareiss_det

INF = math.inf

Edge = tuple[int, int]
ExtRat = Union[Fraction, float]  # float only ever holds INF

LAMBDA_CAP = 24


def parse_entry(value) -> ExtRat:
    """Coerce ints, fractions, ``"p/q"`` strings and ``"inf"`` to an ExtRat."""
    if isinstance(value, str):
        token = value.strip().lower()
        if token in ("inf", "+inf", "infinity", "∞"):
            return INF
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidMatrix(f"cannot parse matrix entry {value!r}") from exc
    if value is None:
        return INF
    if isinstance(value, float):
        if value == INF:
            return INF
        raise InvalidMatrix("floating point entries are not accepted; use p/q")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise InvalidMatrix(f"unsupported matrix entry {value!r}")


def is_finite(x: ExtRat) -> bool:
    return x != INF


def format_entry(x: ExtRat) -> str:
    return "inf" if x == INF else str(x)


@dataclass(frozen=True)
class TropicalMatrix:
    """A d x n matrix over Q ∪ {∞}; every column needs a finite entry."""

    rows: tuple[tuple[ExtRat, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise InvalidMatrix("matrix must have at least one row and column")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise InvalidMatrix("rows have different lengths")
        for k in range(width):
            if all(r[k] == INF for r in self.rows):
                raise InvalidMatrix(f"column {k + 1} has no finite entry")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "TropicalMatrix":
        return cls(tuple(tuple(parse_entry(v) for v in row) for row in rows))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, ij: Edge) -> ExtRat:
        i, j = ij
        return self.rows[i][j]

    def column_support(self, k: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.d) if self.rows[i][k] != INF)

    def to_strings(self) -> list[list[str]]:
        return [[format_entry(x) for x in row] for row in self.rows]

    def __str__(self) -> str:
        return "\n".join(" ".join(r) for r in self.to_strings())


@dataclass(frozen=True)
class BipartiteGraph:
    d: int
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = frozenset(tuple(e) for e in self.edges)
        for i, j in edges:
            if not (0 <= i < self.d and 0 <= j < self.n):
                raise InvalidSubgraph(f"edge {(i, j)} out of range for {self.d}x{self.n}")
        object.__setattr__(self, "edges", edges)

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def left_neighbors(self, i: int) -> list[int]:
        return sorted(j for a, j in self.edges if a == i)

    def right_neighbors(self, j: int) -> list[int]:
        return sorted(i for i, b in self.edges if b == j)

    def subgraph(self, edges: Iterable[Edge]) -> "BipartiteGraph":
        edges = frozenset(edges)
        if not edges <= self.edges:
            raise InvalidSubgraph("edge set is not contained in the graph")
        return BipartiteGraph(self.d, self.n, edges)

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph(self.n, self.d, frozenset((j, i) for i, j in self.edges))

    def components(self) -> int:
        """Number of connected components on all d + n nodes."""
        return count_components(self.d + self.n, ((i, self.d + j) for i, j in self.edges))

    def is_connected(self) -> bool:
        return self.components() == 1


@dataclass(frozen=True)
class DegreeVectors:
    left: tuple[int, ...]
    right: tuple[int, ...]


@dataclass(frozen=True)
class RecessionGraph:
    """Mixed digraph: ``bidirected`` edges both ways, the rest left -> right."""

    base: BipartiteGraph
    bidirected: frozenset

    @property
    def forward_only(self) -> frozenset:
        return self.base.edges - self.bidirected


@dataclass(frozen=True)
class Graph:
    """Undirected (multi)graph on vertices ``0..order-1``."""

    order: int
    edges: tuple[Edge, ...]


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.count -= 1
        return True


def count_components(order: int, edges: Iterable[Edge]) -> int:
    uf = _UnionFind(order)
    for a, b in edges:
        uf.union(a, b)
    return uf.count


# ---------------------------------------------------------------- basic ops


def support_graph(A: TropicalMatrix) -> BipartiteGraph:
    return BipartiteGraph(
        A.d,
        A.n,
        frozenset((i, j) for i in range(A.d) for j in range(A.n) if A.rows[i][j] != INF),
    )


def degree_vectors(B: BipartiteGraph) -> DegreeVectors:
    left = [0] * B.d
    right = [0] * B.n
    for i, j in B.edges:
        left[i] += 1
        right[j] += 1
    return DegreeVectors(tuple(left), tuple(right))


def recession_graph(S: Iterable[Edge], B: BipartiteGraph) -> RecessionGraph:
    S = frozenset(tuple(e) for e in S)
    if not S <= B.edges:
        raise InvalidSubgraph("S is not a subgraph of B")
    return RecessionGraph(B, S)


def _reaches_all(order: int, adj: Sequence[Sequence[int]], start: int = 0) -> bool:
    seen = [False] * order
    seen[start] = True
    todo = deque([start])
    reached = 1
    while todo:
        v = todo.popleft()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                todo.append(w)
    return reached == order


def _digraph_strongly_connected(order: int, arcs: Iterable[Edge]) -> bool:
    if order <= 1:
        return True
    fwd: list[list[int]] = [[] for _ in range(order)]
    bwd: list[list[int]] = [[] for _ in range(order)]
    for a, b in arcs:
        fwd[a].append(b)
        bwd[b].append(a)
    return _reaches_all(order, fwd) and _reaches_all(order, bwd)


def is_strongly_connected(R: RecessionGraph) -> bool:
    d = R.base.d
    arcs = [(i, d + j) for i, j in R.base.edges]
    arcs += [(d + j, i) for i, j in R.bidirected]
    return _digraph_strongly_connected(d + R.base.n, arcs)


def _block_quotient_strong(B: BipartiteGraph, S: Iterable[Edge]) -> bool:
    """Strong connectivity of R(S;B) through the quotient by components of S.

    Components of S are internally strongly connected (bidirected edges),
    so R(S;B) is strongly connected iff the digraph on components with an
    arc for every edge of B is.
    """
    order = B.d + B.n
    uf = _UnionFind(order)
    for i, j in S:
        uf.union(i, B.d + j)
    roots = {}
    for v in range(order):
        roots.setdefault(uf.find(v), len(roots))
    arcs = set()
    for i, j in B.edges:
        a, b = roots[uf.find(i)], roots[uf.find(B.d + j)]
        if a != b:
            arcs.add((a, b))
    return _digraph_strongly_connected(len(roots), arcs)


def matching_number(B: BipartiteGraph) -> int:
    """Maximum matching size by augmenting paths (Kuhn)."""
    adj = [B.left_neighbors(i) for i in range(B.d)]
    match_right = [-1] * B.n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_right[j] == -1 or augment(match_right[j], seen):
                match_right[j] = i
                return True
        return False

    return sum(augment(i, [False] * B.n) for i in range(B.d))


def _lambda_cap() -> int:
    return int(os.environ.get("TROPREZ_LAMBDA_CAP", LAMBDA_CAP))


def recession_witness(B: BipartiteGraph, cap: int | None = None) -> frozenset:
    """A forest S realizing the recession connectivity of B.

    Searches forests by increasing size (so by decreasing component count),
    starting from the matching-number bound.  Leaf edges are forced into S
    since a leaf needs an edge in each direction.
    """
    cap = _lambda_cap() if cap is None else cap
    if not B.is_connected():
        raise NotConnected("recession connectivity needs a connected graph")
    if len(B) > cap:
        raise TooLarge(f"|E(B)| = {len(B)} exceeds the recession search cap {cap}")

    order = B.d + B.n
    edges = B.sorted_edges()
    deg = [0] * order
    for i, j in edges:
        deg[i] += 1
        deg[B.d + j] += 1
    forced = [e for e in edges if deg[e[0]] == 1 or deg[B.d + e[1]] == 1]
    free = [e for e in edges if e not in set(forced)]
    # last index in ``free`` touching each node, for the coverage prune
    last = [-1] * order
    for idx, (i, j) in enumerate(free):
        last[i] = idx
        last[B.d + j] = idx

    memo: dict[frozenset, bool] = {}

    def strong(S: list[Edge]) -> bool:
        uf = _UnionFind(order)
        for i, j in S:
            uf.union(i, B.d + j)
        key = frozenset(frozenset(v for v in range(order) if uf.find(v) == r)
                        for r in {uf.find(v) for v in range(order)})
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = _block_quotient_strong(B, S)
        return hit

    def search(size: int) -> list[Edge] | None:
        uf0 = _UnionFind(order)
        for i, j in forced:
            if not uf0.union(i, B.d + j):
                return None
        if len(forced) > size:
            return None
        covered0 = [False] * order
        for i, j in forced:
            covered0[i] = covered0[B.d + j] = True

        chosen = list(forced)

        def rec(idx: int, parent: list[int], covered: list[bool]) -> list[Edge] | None:
            need = size - len(chosen)
            if need == 0:
                if all(covered) and strong(chosen):
                    return list(chosen)
                return None
            if len(free) - idx < need:
                return None
            i, j = free[idx]
            u, v = i, B.d + j
            # include
            ru, rv = _find(parent, u), _find(parent, v)
            if ru != rv:
                p2 = parent[:]
                p2[ru] = rv
                c2 = covered[:]
                c2[u] = c2[v] = True
                chosen.append(free[idx])
                found = rec(idx + 1, p2, c2)
                chosen.pop()
                if found:
                    return found
            # exclude: a node whose last chance passes uncovered is dead
            if (last[u] == idx and not covered[u]) or (last[v] == idx and not covered[v]):
                return None
            return rec(idx + 1, parent, covered)

        return rec(0, uf0.parent[:], covered0)

    upper = matching_number(B)
    for comps in range(upper, 0, -1):
        found = search(order - comps)
        if found is not None:
            return frozenset(found)
    raise AssertionError("a spanning tree always gives a strongly connected recession graph")


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x


def recession_connectivity(B: BipartiteGraph, cap: int | None = None) -> int:
    S = recession_witness(B, cap)
    return B.subgraph(S).components()


# ------------------------------------------------------ counting oracles


def count_spanning_trees(G: Graph) -> int:
    """Matrix-tree theorem with an exact integer determinant."""
    if G.order == 1:
        return 1
    lap = [[0] * G.order for _ in range(G.order)]
    for a, b in G.edges:
        if a == b:
            continue
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    minor = [row[1:] for row in lap[1:]]
    return bareiss_det(minor)


def count_forests(G: Graph) -> int:
    """Acyclic edge subsets, by brute force over all 2^|E| subsets."""
    total = 0
    for mask in range(1 << len(G.edges)):
        uf = _UnionFind(G.order)
        ok = True
        for idx, (a, b) in enumerate(G.edges):
            if mask >> idx & 1 and not uf.union(a, b):
                ok = False
                break
        total += ok
    return total


def transpose(A: TropicalMatrix) -> TropicalMatrix:
    for i, row in enumerate(A.rows):
        if all(x == INF for x in row):
            raise InvalidTranspose(f"row {i + 1} has no finite entry")
    return TropicalMatrix(tuple(zip(*A.rows)))


def iter_subsets(items: Sequence, min_size: int = 0) -> Iterator[tuple]:
    for r in range(min_size, len(items) + 1):
        yield from itertools.combinations(items, r)
