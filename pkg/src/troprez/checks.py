"""Invariant suite shared by ``troprez check`` and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .covector import (
    bounded_complex,
    cell_feasible,
    coarse_type,
    closed_systems_jointly_feasible,
    enumerate_cells,
    is_sufficiently_generic,
    random_generic_lift,
    type_at_point,
    TypeGraph,
    CLOSED,
)
from .errors import InvalidTranspose
from .fixtures import Fixture
from .graphcore import (
    TropicalMatrix,
    count_forests,
    count_spanning_trees,
    matching_number,
    recession_connectivity,
    support_graph,
    transpose,
)
from .homalg import (
    GF2,
    QQ,
    cell_complex_homology,
    cellular_betti,
    downset_acyclic,
    hochster_betti,
    reduced_homology,
    regularity,
    regularity_bounds,
    sample_bounds,
)
from .ideals import (
    TIE,
    WeightOrder,
    alexander_dual,
    coarse_type_ideal,
    fine_cotype_ideal,
    is_chordal_bipartite,
    leading_monomial,
    monomial_initial_ideal,
    toric_edge_ideal,
)
from .subdiv import crosscut_complex, is_graphic, lattice_points, volume, zonotope_graph

HOCHSTER_EDGE_LIMIT = 22


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f" ({self.detail})" if self.detail else "")


def matrix_checks(fx: Fixture, seed: int = 0) -> Iterator[CheckResult]:
    A = fx.matrix
    B = support_graph(A)
    tag = fx.name
    cx = enumerate_cells(A)
    bc = bounded_complex(A)

    def result(name, ok, detail=""):
        return CheckResult(f"{tag}: {name}", bool(ok), detail)

    yield result("witness round trip",
                 all(type_at_point(A, c.witness) == c.type for c in cx.cells))
    yield result("vertices bounded", all(c.bounded for c in cx.vertices()))
    yield result("bounded complex nonempty iff connected", bool(bc.cells) == B.is_connected())
    yield result("closed cells intersect by type union", _closed_intersections(A, cx, seed))

    try:
        At = transpose(A)
    except InvalidTranspose:
        At = None
    if At is not None:
        f, ft = bc.f_vector(), bounded_complex(At).f_vector()
        yield result("bounded f-vector matches transpose", f == ft, f"{f} vs {ft}")

    if not B.is_connected():
        return

    lam = recession_connectivity(B)
    generic = is_sufficiently_generic(A, cx)
    if "lambda" in fx.expected:
        yield result("lambda matches expected", lam == fx.expected["lambda"],
                     f"{lam} vs {fx.expected['lambda']}")
    if "generic" in fx.expected:
        yield result("genericity matches expected", generic == fx.expected["generic"])
    if "bounded_f" in fx.expected:
        yield result("bounded f-vector matches expected",
                     bc.f_vector() == tuple(fx.expected["bounded_f"]))
    yield result("lambda at most matching number", lam <= matching_number(B))
    yield result("lambda at most min(d, n)", lam <= min(A.d, A.n))
    yield result("dim B(A) at most lambda - 1", bc.dim <= lam - 1, f"{bc.dim} vs {lam - 1}")
    if generic:
        yield result("dim B(A) equals lambda - 1", bc.dim == lam - 1)

    cotype = fine_cotype_ideal(A, cx)
    initial = monomial_initial_ideal(A)
    yield result("cotype ideal dual is the monomial initial ideal", alexander_dual(cotype) == initial)
    yield result("duality is an involution", alexander_dual(alexander_dual(cotype)) == cotype)

    crosscut = crosscut_complex(A)
    hom = reduced_homology(crosscut)
    yield result("crosscut complex acyclic", hom.is_acyclic(GF2) and hom.is_acyclic(QQ))
    bhom = cell_complex_homology(bc.cells)
    yield result("bounded complex acyclic over GF(2) and Q", bhom.is_acyclic(GF2) and bhom.is_acyclic(QQ))

    spanning = A.d + A.n - 1
    if generic:
        w = WeightOrder.from_matrix(A)
        leads = [leading_monomial(f, w) for f in toric_edge_ideal(B)]
        yield result("cycle binomials have leading terms in the initial ideal",
                     all(m is not TIE and initial.contains(m) for m in leads))
        yield result("cotype generators have equal degree",
                     all(g.degree == len(B) - spanning for g in cotype))
        coarse = {tuple(g.as_dict().get(i, 0) for i in range(A.d)) for g in coarse_type_ideal(A, cx)}
        yield result("coarse type generators are the lattice points", coarse == lattice_points(B))
        yield result("crosscut facets are spanning trees",
                     all(len(f) == spanning for f in crosscut.facets))
    else:
        yield result("some crosscut facet is larger than a tree",
                     any(len(f) > spanning for f in crosscut.facets))

    if A.d + A.n <= 18:
        chordal = is_chordal_bipartite(B)
        yield result("chordal iff all cycle binomials are quadrics",
                     chordal == all(f.degree == 2 for f in toric_edge_ideal(B)))

    if len(B) <= HOCHSTER_EDGE_LIMIT:
        cell = cellular_betti(A, bc)
        yield result("cellular Betti table equals Hochster over GF(2)", cell == hochster_betti(cotype, GF2))
        yield result("cellular Betti table equals Hochster over Q", cell == hochster_betti(cotype, QQ))
    if len(B) <= HOCHSTER_EDGE_LIMIT and not initial.is_zero():
        # a forest has the unit cotype ideal and nothing to compare
        dual_table = hochster_betti(initial)
        yield result("Terai: pdim of cotype quotient equals reg of its dual",
                     cell.pdim() + 1 == dual_table.reg(), f"{cell.pdim() + 1} vs {dual_table.reg()}")

    try:
        regularity(B, verify=True, seed=seed)
        yield result("regularity routes agree", True)
    except Exception as exc:  # reported, not raised
        yield result("regularity routes agree", False, str(exc))
    bounds = regularity_bounds(B)
    reg = lam - 1
    yield result("matching bound holds", reg <= bounds.matching_bound)
    if min(A.d, A.n) >= 2:
        yield result("leaf bound holds", reg <= bounds.leaf_bound, f"{reg} vs {bounds.leaf_bound}")

    bs = sample_bounds(A, 20, seed, bc)
    yield result("sampled downsets acyclic", all(downset_acyclic(A, b, bc) for b in bs))

    if generic:
        other = random_generic_lift(B, seed + 1)
        yield result("volume independent of the lift", volume(A) == volume(other))
        yield result("lifts are equidecomposable", coarse_census(A) == coarse_census(other))
    if is_graphic(A) and generic:
        G = zonotope_graph(A)
        yield result("graphic volume counts spanning trees", volume(A) == count_spanning_trees(G))
        yield result("graphic lattice points count forests",
                     len(coarse_type_ideal(A, cx)) == count_forests(G))


def coarse_census(A: TropicalMatrix) -> dict:
    """Multiset of coarse types of the cells, per dimension."""
    census: dict = {}
    for c in enumerate_cells(A).cells:
        key = (c.dim, coarse_type(c.type).t)
        census[key] = census.get(key, 0) + 1
    return census


def _closed_intersections(A: TropicalMatrix, cx, seed: int, samples: int = 40) -> bool:
    rng = random.Random(seed)
    cells = list(cx.cells)
    pairs = list(combinations(range(len(cells)), 2))
    rng.shuffle(pairs)
    for a, b in pairs[:samples]:
        S, T = cells[a].type, cells[b].type
        union = TypeGraph(S.base, S.selected | T.selected)
        if cell_feasible(A, union, CLOSED) != closed_systems_jointly_feasible(A, S, T):
            return False
    return True


def corrupt(fx: Fixture) -> Fixture:
    expected = dict(fx.expected)
    expected["lambda"] = expected.get("lambda", 0) + 1
    return Fixture(fx.name + " (corrupted)", fx.matrix, expected)
