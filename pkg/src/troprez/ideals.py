"""Monomial ideals from the arrangement and binomials of the toric edge ideal.

Fine variables are edges ``(i, j)`` of the support graph, coarse variables
are row indices ``i``.  Both print 1-based: ``x_2_3`` and ``x_2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .covector import TropicalComplex, enumerate_cells
from .errors import NotSquarefree, TooLarge, UniverseMismatch, WeightUndefined
from .graphcore import (
    INF,
    BipartiteGraph,
    Edge,
    TropicalMatrix,
    degree_vectors,
    support_graph,
)
from .subdiv import SimplicialComplex, crosscut_complex


def var_name(v) -> str:
    if isinstance(v, tuple):
        return f"x_{v[0] + 1}_{v[1] + 1}"
    return f"x_{v + 1}"


def parse_var(name: str):
    parts = name.split("_")
    if parts[0] != "x" or len(parts) not in (2, 3):
        raise ValueError(f"bad variable name {name!r}")
    idx = [int(p) - 1 for p in parts[1:]]
    return tuple(idx) if len(idx) == 2 else idx[0]


@dataclass(frozen=True, order=True)
class Monomial:
    """Sorted ``(variable, exponent)`` pairs with positive exponents."""

    exps: tuple = ()

    @classmethod
    def of(cls, powers) -> "Monomial":
        if isinstance(powers, dict):
            items = powers.items()
        else:
            items = [(v, 1) for v in powers]
        acc: dict = {}
        for v, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                acc[v] = acc.get(v, 0) + e
        return cls(tuple(sorted(acc.items())))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        """Inverse of ``str``: ``x_1_2*x_3_1^2`` or ``1``."""
        if text.strip() == "1":
            return cls()
        powers: dict = {}
        for factor in text.split("*"):
            name, _, exp = factor.strip().partition("^")
            v = parse_var(name)
            powers[v] = powers.get(v, 0) + int(exp or 1)
        return cls.of(powers)

    def as_dict(self) -> dict:
        return dict(self.exps)

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self.exps)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def divides(self, other: "Monomial") -> bool:
        theirs = other.as_dict()
        return all(theirs.get(v, 0) >= e for v, e in self.exps)

    def lcm(self, other: "Monomial") -> "Monomial":
        acc = self.as_dict()
        for v, e in other.exps:
            acc[v] = max(acc.get(v, 0), e)
        return Monomial.of(acc)

    def __mul__(self, other: "Monomial") -> "Monomial":
        acc = self.as_dict()
        for v, e in other.exps:
            acc[v] = acc.get(v, 0) + e
        return Monomial.of(acc)

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in self.exps)


@dataclass(frozen=True)
class MonomialIdeal:
    universe: tuple
    gens: tuple

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def supports(self) -> set[frozenset]:
        return {g.support for g in self.gens}

    def strings(self) -> list[str]:
        return [str(g) for g in self.gens]

    def __str__(self) -> str:
        return "<" + ", ".join(self.strings()) + ">"


def _kind(v) -> str:
    return "fine" if isinstance(v, tuple) else "coarse"


def minimalize(gens: Iterable[Monomial], universe: Sequence | None = None) -> MonomialIdeal:
    gens = list(dict.fromkeys(gens))
    used = {v for g in gens for v in g.support}
    if len({_kind(v) for v in used} | ({_kind(v) for v in universe} if universe else set())) > 1:
        raise UniverseMismatch("fine and coarse variables mixed")
    if universe is None:
        universe = sorted(used)
    elif not used <= set(universe):
        raise UniverseMismatch("generator uses a variable outside the universe")
    gens.sort(key=lambda g: (g.degree, g.exps))
    kept: list[Monomial] = []
    for g in gens:
        if not any(h.divides(g) for h in kept):
            kept.append(g)
    kept.sort(key=lambda g: g.exps)
    return MonomialIdeal(tuple(universe), tuple(kept))


# --------------------------------------------------- ideals of the arrangement


def _cells(A: TropicalMatrix, complex_: TropicalComplex | None) -> TropicalComplex:
    return enumerate_cells(A) if complex_ is None else complex_


def fine_type_ideal(A: TropicalMatrix, complex_: TropicalComplex | None = None) -> MonomialIdeal:
    cx = _cells(A, complex_)
    return minimalize((Monomial.of(c.type.selected) for c in cx.cells),
                      support_graph(A).sorted_edges())


def coarse_type_ideal(A: TropicalMatrix, complex_: TropicalComplex | None = None) -> MonomialIdeal:
    cx = _cells(A, complex_)
    gens = (Monomial.of(dict(enumerate(degree_vectors(c.type.graph()).left))) for c in cx.cells)
    return minimalize(gens, list(range(A.d)))


def fine_cotype_ideal(A: TropicalMatrix, complex_: TropicalComplex | None = None) -> MonomialIdeal:
    cx = _cells(A, complex_)
    return minimalize((Monomial.of(c.cotype) for c in cx.cells),
                      support_graph(A).sorted_edges())


def coarse_cotype_ideal(A: TropicalMatrix, complex_: TropicalComplex | None = None) -> MonomialIdeal:
    cx = _cells(A, complex_)
    total = degree_vectors(support_graph(A)).left
    gens = []
    for c in cx.cells:
        part = degree_vectors(c.type.graph()).left
        gens.append(Monomial.of({i: total[i] - part[i] for i in range(A.d)}))
    return minimalize(gens, list(range(A.d)))


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    """Minimal transversals of the generator supports (Berge's method)."""
    if not I.is_squarefree():
        raise NotSquarefree("Alexander duality is implemented for squarefree ideals")
    transversals: list[frozenset] = [frozenset()]
    for g in sorted(I.gens, key=lambda m: (m.degree, m.exps)):
        edge = g.support
        grown = []
        for t in transversals:
            if t & edge:
                grown.append(t)
            else:
                grown.extend(t | {v} for v in edge)
        grown = sorted(set(grown), key=len)
        transversals = []
        for t in grown:
            if not any(s <= t for s in transversals):
                transversals.append(t)
    return minimalize((Monomial.of(t) for t in transversals), I.universe)


def stanley_reisner_ideal(D: SimplicialComplex) -> MonomialIdeal:
    """Minimal non-faces, found level by level."""
    minimal_non_faces = []
    level = [frozenset([v]) for v in D.vertices]
    faces = []
    for s in level:
        (faces if D.is_face(s) else minimal_non_faces).append(s)
    while faces:
        face_set = set(faces)
        candidates = set()
        for f in faces:
            for v in D.vertices:
                if v in f or v < max(f):
                    continue
                cand = f | {v}
                if all(cand - {u} in face_set for u in cand):
                    candidates.add(cand)
        faces = []
        for cand in sorted(candidates, key=sorted):
            (faces if D.is_face(cand) else minimal_non_faces).append(cand)
    return minimalize((Monomial.of(s) for s in minimal_non_faces), D.vertices)


def monomial_initial_ideal(A: TropicalMatrix) -> MonomialIdeal:
    """Largest monomial ideal inside the initial ideal of the toric edge ideal."""
    return stanley_reisner_ideal(crosscut_complex(A))


# ------------------------------------------------------------- binomials


@dataclass(frozen=True)
class Binomial:
    plus: Monomial
    minus: Monomial

    @property
    def degree(self) -> int:
        return self.plus.degree

    @property
    def variables(self) -> frozenset:
        return self.plus.support | self.minus.support

    def __str__(self) -> str:
        return f"{self.plus} - {self.minus}"


class _Tie:
    def __repr__(self) -> str:
        return "Tie"

    __str__ = __repr__


TIE = _Tie()


@dataclass(frozen=True)
class WeightOrder:
    weights: dict

    @classmethod
    def from_matrix(cls, A: TropicalMatrix) -> "WeightOrder":
        return cls({(i, j): A.rows[i][j] for i in range(A.d) for j in range(A.n)
                    if A.rows[i][j] != INF})

    def weight(self, m: Monomial) -> Fraction:
        total = Fraction(0)
        for v, e in m.exps:
            if v not in self.weights:
                raise WeightUndefined(f"{var_name(v)} has no weight")
            total += e * self.weights[v]
        return total


def cycle_binomial(cycle: Sequence[Edge]) -> Binomial:
    """Binomial of an even cycle given as edges in cyclic order.

    The walk starts at the least edge and heads toward its smaller
    neighbour; edges in even positions form ``plus``.
    """
    m = len(cycle)
    start = min(range(m), key=lambda k: cycle[k])
    step = 1 if cycle[(start + 1) % m] < cycle[(start - 1) % m] else -1
    walk = [cycle[(start + step * k) % m] for k in range(m)]
    return Binomial(Monomial.of(walk[0::2]), Monomial.of(walk[1::2]))


def _node_cycle_edges(B: BipartiteGraph, nodes: Sequence[int]) -> list[Edge]:
    edges = []
    for a, b in zip(nodes, list(nodes[1:]) + [nodes[0]]):
        i, j = (a, b - B.d) if a < B.d else (b, a - B.d)
        edges.append((i, j))
    return edges


def chordless_cycles(B: BipartiteGraph) -> list[list[Edge]]:
    """Induced cycles of B as edge lists, each reported once."""
    order = B.d + B.n
    adj = [set() for _ in range(order)]
    for i, j in B.edges:
        adj[i].add(B.d + j)
        adj[B.d + j].add(i)
    found = []
    seen = set()
    for start in range(order):
        # cycles whose least node is ``start``; path extended only through larger nodes
        path = [start]
        on_path = {start}

        def extend(v: int) -> None:
            for w in sorted(adj[v]):
                if w <= start or w in on_path:
                    continue
                # a chord from w to an interior path node kills the cycle
                if any(u in adj[w] for u in path[1:-1]):
                    continue
                if len(path) >= 3 and start in adj[w]:
                    key = frozenset(path) | {w}
                    if key not in seen:
                        seen.add(key)
                        found.append(_node_cycle_edges(B, path + [w]))
                    continue
                path.append(w)
                on_path.add(w)
                extend(w)
                path.pop()
                on_path.discard(w)

        extend(start)
    return found


def toric_edge_ideal(B: BipartiteGraph) -> list[Binomial]:
    gens = [cycle_binomial(c) for c in chordless_cycles(B)]
    gens.sort(key=lambda f: (f.degree, f.plus.exps, f.minus.exps))
    return gens


def leading_monomial(f: Binomial, w: WeightOrder):
    a, b = w.weight(f.plus), w.weight(f.minus)
    if a == b:
        return TIE
    return f.plus if a > b else f.minus


def distinguished_minors(A: TropicalMatrix) -> list[Binomial]:
    """2-minors of the generic matrix whose four entries are all supported."""
    B = support_graph(A)
    out = []
    for i, h in combinations(range(A.d), 2):
        for j, k in combinations(range(A.n), 2):
            quad = [(i, j), (i, k), (h, k), (h, j)]
            if all(e in B.edges for e in quad):
                out.append(cycle_binomial(quad))
    out.sort(key=lambda f: (f.degree, f.plus.exps, f.minus.exps))
    return out


INDUCED_CYCLE_NODE_CAP = 18


def is_chordal_bipartite(B: BipartiteGraph) -> bool:
    """No induced cycle of length at least six, by scanning node subsets."""
    order = B.d + B.n
    if order > INDUCED_CYCLE_NODE_CAP:
        raise TooLarge(f"{order} nodes exceeds the induced-cycle scan cap")
    adj = [0] * order
    for i, j in B.edges:
        adj[i] |= 1 << (B.d + j)
        adj[B.d + j] |= 1 << i
    for size in range(6, order + 1, 2):
        for nodes in combinations(range(order), size):
            mask = 0
            for v in nodes:
                mask |= 1 << v
            if all(bin(adj[v] & mask).count("1") == 2 for v in nodes) and _connected_mask(adj, mask, nodes[0]):
                return False
    return True


def _connected_mask(adj: list[int], mask: int, start: int) -> bool:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        v = 0
        f = frontier
        while f:
            low = f & -f
            v = low.bit_length() - 1
            nxt |= adj[v] & mask
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == mask
