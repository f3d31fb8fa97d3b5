"""Homology, Betti tables and regularity invariants.

Betti tables index the ideal, not the quotient: ``beta[0, j]`` counts
minimal generators of degree ``j``.  So ``pdim(S/I) = pdim(I) + 1`` and
``reg(S/I) = reg(I) - 1``.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .covector import (
    TropicalComplex,
    bounded_complex,
    random_generic_lift,
)
from .errors import InconsistentResult, NotConnected, NotSquarefree, TooLarge
from .graphcore import (
    BipartiteGraph,
    TropicalMatrix,
    degree_vectors,
    matching_number,
    recession_connectivity,
    support_graph,
)
from .ideals import (
    Monomial,
    MonomialIdeal,
    alexander_dual,
    fine_cotype_ideal,
    monomial_initial_ideal,
    toric_edge_ideal,
)
from .linalg import gf2_rank, sparse_rank
from .subdiv import SimplicialComplex

HOCHSTER_CAP = 22
GF2 = "gf2"
QQ = "qq"


@dataclass(frozen=True)
class ChainComplexRanks:
    """Reduced homology ranks by dimension (index 0 is dimension -1)."""

    gf2: tuple
    qq: tuple | None = None

    def rank(self, dim: int, field_: str = GF2) -> int:
        ranks = self.gf2 if field_ == GF2 else self.qq
        k = dim + 1
        return ranks[k] if 0 <= k < len(ranks) else 0

    def is_acyclic(self, field_: str = GF2) -> bool:
        ranks = self.gf2 if field_ == GF2 else self.qq
        return not any(ranks)


@dataclass
class BettiTable:
    entries: Counter = field(default_factory=Counter)  # (i, j) -> count
    fine: Counter = field(default_factory=Counter)  # (i, Monomial) -> count

    def add(self, i: int, label: Monomial, count: int = 1) -> None:
        if count:
            self.fine[i, label] += count
            self.entries[i, label.degree] += count

    def coarse(self) -> dict:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def fine_dict(self) -> dict:
        return {k: v for k, v in self.fine.items() if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.fine_dict() == other.fine_dict()

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def pdim(self) -> int:
        """Projective dimension of the ideal; -1 for the zero ideal."""
        return max((i for (i, _), v in self.entries.items() if v), default=-1)

    def reg(self) -> int:
        """Regularity of the ideal."""
        return max((j - i for (i, j), v in self.entries.items() if v), default=0)

    def diagonals(self) -> set[int]:
        return {j - i for (i, j), v in self.entries.items() if v}

    def rows(self) -> list[dict]:
        return [{"i": i, "j": j, "count": v} for (i, j), v in sorted(self.entries.items()) if v]


# ------------------------------------------------------------ homology


def _faces_from_facets(facets: Iterable[frozenset]) -> list[list[tuple]]:
    """Faces by dimension, index 0 holding the empty face."""
    seen: set[tuple] = set()
    for f in facets:
        f = tuple(sorted(f))
        for r in range(len(f) + 1):
            seen.update(combinations(f, r))
    by_dim: list[list[tuple]] = []
    for face in seen:
        while len(by_dim) <= len(face):
            by_dim.append([])
        by_dim[len(face)].append(face)
    for lst in by_dim:
        lst.sort()
    return by_dim


def _homology_from_boundaries(sizes: list[int], boundaries: list, field_: str) -> list[int]:
    """Ranks ``H_k = dim C_k - rank d_k - rank d_{k+1}`` over the chosen field."""
    ranks = []
    for mat in boundaries:
        if field_ == GF2:
            ranks.append(gf2_rank(mat))
        else:
            ranks.append(sparse_rank(mat))
    ranks.append(0)
    # boundaries[k] maps level k to level k-1; level 0 has the zero map
    return [sizes[k] - ranks[k] - ranks[k + 1] for k in range(len(sizes))]


def _simplicial_ranks(facets: Sequence[frozenset], field_: str) -> list[int]:
    if not facets:
        return []  # void complex: no faces at all, homology vanishes
    if frozenset.intersection(*map(frozenset, facets)):
        # a cone over a common vertex is acyclic
        return [0] * (max(len(f) for f in facets) + 1)
    levels = _faces_from_facets(facets)
    sizes = [len(lv) for lv in levels]
    index = [{f: n for n, f in enumerate(lv)} for lv in levels]
    boundaries: list = [[] if field_ == GF2 else []]
    for k in range(1, len(levels)):
        rows = []
        for face in levels[k]:
            if field_ == GF2:
                bits = 0
                for drop in range(len(face)):
                    bits |= 1 << index[k - 1][face[:drop] + face[drop + 1:]]
                rows.append(bits)
            else:
                row = {}
                for drop in range(len(face)):
                    row[index[k - 1][face[:drop] + face[drop + 1:]]] = -1 if drop % 2 else 1
                rows.append(row)
        boundaries.append(rows)
    return _homology_from_boundaries(sizes, boundaries, field_)


def reduced_homology(D: SimplicialComplex | Sequence[frozenset], fields=(GF2, QQ)) -> ChainComplexRanks:
    facets = list(D.facets) if isinstance(D, SimplicialComplex) else [frozenset(f) for f in D]
    gf2 = tuple(_simplicial_ranks(facets, GF2)) if GF2 in fields else ()
    qq = tuple(_simplicial_ranks(facets, QQ)) if QQ in fields else None
    return ChainComplexRanks(gf2, qq)


def cell_complex_homology(cells: Sequence, fields=(GF2, QQ)) -> ChainComplexRanks:
    """Reduced homology of a polyhedral complex given by its cell records.

    GF(2) uses the cellular chain complex (face incidences are +-1 for
    polyhedra); Q uses the order complex of the face poset.
    """
    cells = list(cells)
    gf2: tuple = ()
    qq = None
    if GF2 in fields:
        gf2 = tuple(_cellular_gf2(cells))
    if QQ in fields:
        qq = tuple(_simplicial_ranks(_order_complex_facets(cells), QQ))
    return ChainComplexRanks(gf2, qq)


def _cellular_gf2(cells: list) -> list[int]:
    if not cells:
        return []
    top = max(c.dim for c in cells)
    levels = [[None]] + [[c for c in cells if c.dim == k] for k in range(top + 1)]
    sizes = [len(lv) for lv in levels]
    boundaries: list = [[]]
    boundaries.append([1] * sizes[1])  # vertices map onto the empty face
    for k in range(2, len(levels)):
        below = levels[k - 1]
        rows = []
        for c in levels[k]:
            bits = 0
            for n, f in enumerate(below):
                if f.type.selected > c.type.selected:
                    bits |= 1 << n
            rows.append(bits)
        boundaries.append(rows)
    return _homology_from_boundaries(sizes, boundaries, GF2)


def _order_complex_facets(cells: list) -> list[frozenset]:
    """Maximal chains of the face poset, cells named by position."""
    if not cells:
        return []
    below = {n: [m for m, f in enumerate(cells) if f.type.selected > c.type.selected]
             for n, c in enumerate(cells)}
    chains: list[frozenset] = []

    below_sets = {n: set(ms) for n, ms in below.items()}

    def down(n: int, acc: list) -> None:
        # covers of n: cells below n with nothing strictly in between
        covers = [m for m in below[n] if not any(m in below_sets[p] for p in below[n])]
        if not covers:
            chains.append(frozenset(acc))
            return
        for m in covers:
            down(m, acc + [m])

    has_cover = {m for ms in below.values() for m in ms}
    for n in range(len(cells)):
        if n not in has_cover:
            down(n, [n])
    return chains


# ---------------------------------------------------------- Betti tables


def lcm_lattice(I: MonomialIdeal) -> set[Monomial]:
    lattice = set(I.gens)
    frontier = set(I.gens)
    while frontier:
        fresh = set()
        for m in frontier:
            for g in I.gens:
                l = m.lcm(g)
                if l not in lattice:
                    fresh.add(l)
        lattice |= fresh
        frontier = fresh
    return lattice


def hochster_betti(I: MonomialIdeal, field_: str = GF2, cap: int | None = None) -> BettiTable:
    """Fine Betti numbers of a squarefree ideal from links in the dual complex.

    The complex whose facets are the complements of the generators has the
    Alexander dual of ``I`` as its Stanley-Reisner ideal, and
    ``beta_{i,s}(I)`` is the rank of ``H_{i-1}`` of the link of the
    complement of ``s`` in it.  Only lcm-lattice degrees can contribute.
    """
    cap = int(os.environ.get("TROPREZ_HOCHSTER_CAP", HOCHSTER_CAP)) if cap is None else cap
    if not I.is_squarefree():
        raise NotSquarefree("Hochster's formula is implemented for squarefree ideals")
    if len(I.universe) > cap:
        raise TooLarge(f"{len(I.universe)} variables exceeds the Hochster cap {cap}")
    table = BettiTable()
    if I.is_zero():
        return table
    universe = frozenset(I.universe)
    facets = [universe - g.support for g in I.gens]
    for label in sorted(lcm_lattice(I), key=lambda m: (m.degree, m.exps)):
        outside = universe - label.support
        link = [f - outside for f in facets if outside <= f]
        maximal = [f for f in set(link) if not any(f < g for g in link)]
        ranks = _simplicial_ranks(maximal, field_)
        for i in range(len(ranks)):
            # ranks[k] is dimension k - 1, and beta_i reads H_{i-1}
            table.add(i, label, ranks[i])
    return table


def cellular_betti(A: TropicalMatrix, complex_: TropicalComplex | None = None) -> BettiTable:
    """Counts of bounded cells by dimension and cotype label."""
    cells = bounded_complex(A) if complex_ is None else complex_
    table = BettiTable()
    for c in cells.cells:
        if c.bounded:
            table.add(c.dim, Monomial.of(c.cotype))
    return table


# ---------------------------------------------------- graph invariants


def _require_connected(B: BipartiteGraph) -> None:
    if not B.is_connected():
        raise NotConnected("invariant defined for connected graphs only")


def regularity(B: BipartiteGraph, verify: bool = False, seed=0) -> int:
    """Regularity of the toric edge ring, with optional cross-checks."""
    _require_connected(B)
    reg = recession_connectivity(B) - 1
    if verify:
        A = random_generic_lift(B, seed)
        geometric = bounded_complex(A).dim
        homological = hochster_betti(fine_cotype_ideal(A)).pdim()
        if not reg == geometric == homological:
            raise InconsistentResult(
                f"regularity routes disagree: lambda-1={reg}, dim B(A)={geometric}, "
                f"pdim route={homological}"
            )
    return reg


def krull_dimension(B: BipartiteGraph) -> int:
    """Rank of the edge vectors: covered nodes minus components with edges."""
    covered = {i for i, _ in B.edges} | {B.d + j for _, j in B.edges}
    isolated = B.d + B.n - len(covered)
    return len(covered) - (B.components() - isolated)


@dataclass(frozen=True)
class RegularityBounds:
    leaf_bound: int
    matching_bound: int


def regularity_bounds(B: BipartiteGraph) -> RegularityBounds:
    _require_connected(B)
    deg = degree_vectors(B)
    r = sum(1 for x in deg.right if x == 1)
    s = sum(1 for x in deg.left if x == 1)
    return RegularityBounds(min(B.n - r, B.d - s) - 1, matching_number(B) - 1)


@dataclass(frozen=True)
class LinearClass:
    kind: str  # "two-linear", "hypersurface" or "none"
    q: int | None = None

    def __str__(self) -> str:
        return f"hypersurface({self.q})" if self.kind == "hypersurface" else self.kind


def strip_leaves(B: BipartiteGraph) -> BipartiteGraph:
    edges = set(B.edges)
    while True:
        left = Counter(i for i, _ in edges)
        right = Counter(j for _, j in edges)
        leaves = {e for e in edges if left[e[0]] == 1 or right[e[1]] == 1}
        if not leaves:
            return BipartiteGraph(B.d, B.n, frozenset(edges))
        # a lone edge has both ends as leaves; removing it empties the graph
        edges -= leaves


def _is_k2m(core: BipartiteGraph) -> bool:
    lefts = {i for i, _ in core.edges}
    rights = {j for _, j in core.edges}
    if len(core.edges) != len(lefts) * len(rights):
        return False
    return min(len(lefts), len(rights)) == 2 or not core.edges


def linear_resolution_class(B: BipartiteGraph) -> LinearClass:
    _require_connected(B)
    core = strip_leaves(B)
    if _is_k2m(core):
        return LinearClass("two-linear")
    gens = toric_edge_ideal(B)
    if len(gens) == 1 and gens[0].degree >= 3:
        return LinearClass("hypersurface", gens[0].degree)
    return LinearClass("none")


def downset_acyclic(A: TropicalMatrix, b, complex_: TropicalComplex | None = None) -> bool:
    """Bounded cells whose cotype divides ``b`` form an acyclic complex."""
    bound = b if isinstance(b, Monomial) else Monomial.of(b)
    cells = bounded_complex(A) if complex_ is None else complex_
    chosen = [c for c in cells.cells if c.bounded and Monomial.of(c.cotype).divides(bound)]
    return cell_complex_homology(chosen, fields=(GF2,)).is_acyclic(GF2)


def sample_bounds(A: TropicalMatrix, count: int, seed=0, complex_: TropicalComplex | None = None) -> list[Monomial]:
    """Vertex labels, the everything bound, the empty bound and random lcms."""
    cells = bounded_complex(A) if complex_ is None else complex_
    labels = sorted({Monomial.of(c.cotype) for c in cells.vertices()})
    everything = Monomial.of(support_graph(A).edges)
    picks = list(dict.fromkeys(labels + [everything, Monomial()]))
    rng = random.Random(seed)
    edges = support_graph(A).sorted_edges()
    while len(picks) < count:
        if labels and rng.random() < 0.5:
            sample = rng.sample(labels, rng.randint(1, len(labels)))
            m = Monomial()
            for s in sample:
                m = m.lcm(s)
        else:
            m = Monomial.of(rng.sample(edges, rng.randint(0, len(edges))))
        picks.append(m)
    return picks


def cohen_macaulay_check(B: BipartiteGraph, seed=0) -> bool:
    """The dual of the initial ideal of a generic lift has a linear resolution."""
    _require_connected(B)
    A = random_generic_lift(B, seed)
    dual = alexander_dual(monomial_initial_ideal(A))
    return len(hochster_betti(dual).diagonals()) <= 1
