"""Command line interface: ``troprez <command> [options]``.

Exit codes: 0 ok, 1 a check failed, 2 bad input, 3 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import deque
from fractions import Fraction
from typing import Sequence

from . import covector
from .checks import corrupt, matrix_checks
from .covector import bounded_complex, enumerate_cells, is_sufficiently_generic
from .errors import InputError, NotBipartite, TooLarge, TroprezError
from .fixtures import Fixture, builtin_fixtures
from .graphcore import (
    BipartiteGraph,
    TropicalMatrix,
    count_forests,
    count_spanning_trees,
    degree_vectors,
    recession_connectivity,
    recession_witness,
    support_graph,
    transpose,
)
from .homalg import (
    GF2,
    QQ,
    cellular_betti,
    hochster_betti,
    krull_dimension,
    linear_resolution_class,
    regularity_bounds,
)
from .ideals import (
    WeightOrder,
    alexander_dual,
    coarse_cotype_ideal,
    coarse_type_ideal,
    fine_cotype_ideal,
    fine_type_ideal,
    leading_monomial,
    monomial_initial_ideal,
    toric_edge_ideal,
)
from .subdiv import (
    draconian_sequences,
    is_graphic,
    lattice_points,
    volume,
    zonotope_graph,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


# ------------------------------------------------------------- parsing


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def parse_matrix(text: str) -> TropicalMatrix:
    rows = [tokens for _, tokens in _content_lines(text)]
    if not rows:
        raise InputError("matrix file has no rows")
    return TropicalMatrix.from_rows(rows)


def parse_graph(text: str) -> BipartiteGraph:
    """Lines ``i j`` with 1-based left and right node indices."""
    edges = set()
    for lineno, tokens in _content_lines(text):
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: expected two node indices")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise InputError(f"line {lineno}: node indices must be integers") from exc
        if i < 1 or j < 1:
            raise InputError(f"line {lineno}: node indices are 1-based")
        edges.add((i - 1, j - 1))
    if not edges:
        raise InputError("graph file has no edges")
    d = max(i for i, _ in edges) + 1
    n = max(j for _, j in edges) + 1
    return BipartiteGraph(d, n, frozenset(edges))


def parse_general_graph(text: str) -> BipartiteGraph:
    """Undirected edges ``u v`` with arbitrary labels, 2-coloured by BFS."""
    adj: dict[str, list[str]] = {}
    pairs = []
    for lineno, tokens in _content_lines(text):
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: expected two node labels")
        u, v = tokens
        if u == v:
            raise NotBipartite(f"line {lineno}: loop at {u}")
        pairs.append((u, v))
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not pairs:
        raise InputError("graph file has no edges")
    colour: dict[str, int] = {}
    for root in adj:  # insertion order keeps the colouring deterministic
        if root in colour:
            continue
        colour[root] = 0
        todo = deque([root])
        while todo:
            u = todo.popleft()
            for v in adj[u]:
                if v not in colour:
                    colour[v] = 1 - colour[u]
                    todo.append(v)
                elif colour[v] == colour[u]:
                    raise NotBipartite(f"odd cycle through {u} and {v}")
    left = [u for u in adj if colour[u] == 0]
    right = [u for u in adj if colour[u] == 1]
    li = {u: k for k, u in enumerate(left)}
    ri = {u: k for k, u in enumerate(right)}
    edges = frozenset((li[u], ri[v]) if colour[u] == 0 else (li[v], ri[u]) for u, v in pairs)
    return BipartiteGraph(len(left), max(len(right), 1), edges)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


# ---------------------------------------------------------- serializing


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def _edges(edges) -> list[list[int]]:
    return [[i + 1, j + 1] for i, j in sorted(edges)]


def _ideal(I) -> list[str]:
    return I.strings()


def _omitted(reason: str) -> dict:
    return {"omitted": reason}


def _betti_json(table) -> dict:
    fine = sorted(((i, str(m)), v) for (i, m), v in table.fine_dict().items())
    return {
        "table": table.rows(),
        "fine": [{"i": i, "label": label, "count": v} for (i, label), v in fine],
    }


def _cell_json(c) -> dict:
    return {
        "dim": c.dim,
        "bounded": c.bounded,
        "type": _edges(c.type.selected),
        "cotype": _edges(c.cotype),
        "witness": [_q(x) for x in c.witness],
    }


def build_report(A: TropicalMatrix, seed: int = 0, field_: str = GF2, timing: bool = False) -> dict:
    start = time.perf_counter()
    B = support_graph(A)
    deg = degree_vectors(B)
    cx = enumerate_cells(A)
    bc = bounded_complex(A)
    connected = B.is_connected()
    report: dict = {
        "input": {"d": A.d, "n": A.n, "matrix": A.to_strings()},
        "support_graph": {"edges": _edges(B.edges), "edge_count": len(B)},
        "degree_vectors": {"left": list(deg.left), "right": list(deg.right)},
        "connected": connected,
        "seed": seed,
        "f_vector": {"complex": list(cx.f_vector()), "bounded": list(bc.f_vector())},
    }
    generic = is_sufficiently_generic(A, cx) if connected else None
    report["generic"] = generic

    if connected:
        lam = recession_connectivity(B)
        bounds = regularity_bounds(B)
        report["lambda"] = lam
        report["regularity"] = lam - 1
        report["bounded_dim"] = bc.dim
        report["bounds"] = {"leaf_bound": bounds.leaf_bound, "matching_bound": bounds.matching_bound}
        report["linear_resolution_class"] = str(linear_resolution_class(B))
    else:
        reason = "support graph is disconnected"
        for key in ("lambda", "regularity", "bounded_dim", "bounds", "linear_resolution_class"):
            report[key] = _omitted(reason)
    report["krull_dim"] = krull_dimension(B)

    cotype = fine_cotype_ideal(A, cx)
    report["fine_type_ideal"] = _ideal(fine_type_ideal(A, cx))
    report["coarse_type_ideal"] = _ideal(coarse_type_ideal(A, cx))
    report["fine_cotype_ideal"] = _ideal(cotype)
    report["coarse_cotype_ideal"] = _ideal(coarse_cotype_ideal(A, cx))
    w = WeightOrder.from_matrix(A)
    report["toric_edge_ideal"] = [
        {"plus": str(f.plus), "minus": str(f.minus), "leading": str(leading_monomial(f, w))}
        for f in toric_edge_ideal(B)
    ]
    if connected:
        initial = monomial_initial_ideal(A)
        report["initial_ideal_monomial_part"] = _ideal(initial)
        report["cotype_ideal_dual"] = _ideal(alexander_dual(cotype))
    else:
        report["initial_ideal_monomial_part"] = _omitted("support graph is disconnected")
        report["cotype_ideal_dual"] = _omitted("support graph is disconnected")

    betti: dict = {"cellular": _betti_json(cellular_betti(A, bc))}
    if len(cotype.universe) <= 22:
        betti["hochster"] = _betti_json(hochster_betti(cotype, field_))
        betti["hochster_field"] = field_
    else:
        betti["hochster"] = _omitted("more than 22 variables")
    report["betti"] = betti

    if generic:
        report["volume"] = _q(volume(A))
        report["draconian_sequences"] = sorted(list(s) for s in draconian_sequences(A))
    else:
        reason = "matrix is not sufficiently generic" if connected else "support graph is disconnected"
        report["volume"] = _omitted(reason)
        report["draconian_sequences"] = _omitted(reason)
    report["lattice_points"] = sorted(list(p) for p in lattice_points(B))

    if is_graphic(A):
        G = zonotope_graph(A)
        zono: dict = {"graph_edges": [[a + 1, b + 1] for a, b in G.edges]}
        zono["forests"] = count_forests(G)
        zono["spanning_trees"] = count_spanning_trees(G) if connected else 0
        report["zonotope"] = zono
    else:
        report["zonotope"] = _omitted("matrix is not graphic")
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 4)
    return report


# --------------------------------------------------------------- output


def _emit(payload, args, pretty_lines=None) -> None:
    if args.pretty and not args.json and pretty_lines is not None:
        print("\n".join(pretty_lines(payload)))
    else:
        print(json.dumps(payload, indent=2, sort_keys=False))


def _pretty_report(r: dict) -> list[str]:
    lines = []
    for key, value in r.items():
        if isinstance(value, list) and value and isinstance(value[0], (str, dict, list)):
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in value)
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in value.items())
        else:
            lines.append(f"{key}: {value}")
    return lines


def _pretty_cells(cells: list) -> list[str]:
    lines = [f"{'dim':>3} {'bdd':>3}  type / cotype / witness"]
    for c in cells:
        lines.append(f"{c['dim']:>3} {'y' if c['bounded'] else 'n':>3}  {c['type']} / {c['cotype']} / {c['witness']}")
    return lines


# ------------------------------------------------------------- commands


def cmd_analyze(args) -> int:
    A = parse_matrix(_read(args.path))
    _emit(build_report(A, args.seed, args.field, args.timing), args, _pretty_report)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.path:
        fixtures = [Fixture(args.path, parse_matrix(_read(args.path)))]
    else:
        fixtures = builtin_fixtures()
    if args.selftest_negative:
        fixtures = [corrupt(fixtures[0])] + fixtures[1:]
    failed = 0
    total = 0
    for fx in fixtures:
        for result in matrix_checks(fx, args.seed):
            total += 1
            failed += not result.passed
            print(result.line())
    print(f"{total - failed}/{total} checks passed")
    return EXIT_CHECK if failed else EXIT_OK


def cmd_edge_ideal(args) -> int:
    text = _read(args.path)
    B = parse_general_graph(text) if args.general else parse_graph(text)
    for f in toric_edge_ideal(B):
        print(f)
    return EXIT_OK


def cmd_types(args) -> int:
    A = parse_matrix(_read(args.path))
    cells = [_cell_json(c) for c in enumerate_cells(A).cells]
    _emit(cells, args, _pretty_cells)
    return EXIT_OK


def cmd_bounded(args) -> int:
    A = parse_matrix(_read(args.path))
    bc = bounded_complex(A)
    payload = {"f_vector": list(bc.f_vector()), "dim": bc.dim,
               "cells": [_cell_json(c) for c in bc.cells]}
    if args.transpose:
        payload["transpose_f_vector"] = list(bounded_complex(transpose(A)).f_vector())
    _emit(payload, args, lambda p: [f"f-vector {p['f_vector']}"] + _pretty_cells(p["cells"]))
    return EXIT_OK


def cmd_ideals(args) -> int:
    A = parse_matrix(_read(args.path))
    r = build_report(A, args.seed, args.field)
    keys = ["fine_type_ideal", "coarse_type_ideal", "fine_cotype_ideal", "coarse_cotype_ideal",
            "initial_ideal_monomial_part", "cotype_ideal_dual", "toric_edge_ideal"]
    _emit({k: r[k] for k in keys}, args, _pretty_report)
    return EXIT_OK


def cmd_betti(args) -> int:
    A = parse_matrix(_read(args.path))
    cotype = fine_cotype_ideal(A)
    payload = {"cellular": _betti_json(cellular_betti(A)),
               "hochster": _betti_json(hochster_betti(cotype, args.field)),
               "field": args.field}
    payload["agree"] = payload["cellular"] == payload["hochster"]

    def pretty(p):
        lines = [f"{'i':>3} {'j':>3} {'count':>6}"]
        lines += [f"{row['i']:>3} {row['j']:>3} {row['count']:>6}" for row in p["cellular"]["table"]]
        lines.append(f"hochster agrees ({p['field']}): {p['agree']}")
        return lines

    _emit(payload, args, pretty)
    return EXIT_OK if payload["agree"] else EXIT_CHECK


def cmd_volume(args) -> int:
    A = parse_matrix(_read(args.path))
    payload = {"volume": _q(volume(A)),
               "draconian_sequences": sorted(list(s) for s in draconian_sequences(A))}
    _emit(payload, args, _pretty_report)
    return EXIT_OK


def cmd_lambda(args) -> int:
    text = _read(args.path)
    if args.graph:
        B = parse_general_graph(text) if args.general else parse_graph(text)
    else:
        B = support_graph(parse_matrix(text))
    witness = recession_witness(B)
    lam = B.subgraph(witness).components()
    payload = {"lambda": lam, "regularity": lam - 1, "witness_forest": _edges(witness)}
    _emit(payload, args, _pretty_report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for random generic lifts")
    common.add_argument("--cap", type=int, default=None, help="edge cap for cell enumeration")
    common.add_argument("--field", choices=[GF2, QQ], default=GF2, help="homology field")
    common.add_argument("--pretty", action="store_true", help="human readable tables")
    common.add_argument("--json", action="store_true", help="force JSON output")
    common.add_argument("--timing", action="store_true", help="include wall time in reports")

    parser = argparse.ArgumentParser(prog="troprez", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, path_help="matrix file", optional=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("path", nargs="?" if optional else None, help=path_help)
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "full JSON report for a matrix")
    p = add("check", cmd_check, "run the invariant suite", "matrix file (default: builtin corpus)", True)
    p.add_argument("--selftest-negative", action="store_true",
                   help="corrupt one fixture so the suite must fail")
    p = add("edge-ideal", cmd_edge_ideal, "cycle binomials of a bipartite graph", "graph file")
    p.add_argument("--general", action="store_true", help="edges between arbitrary labels, sides found by 2-colouring")
    add("types", cmd_types, "all cells of the tropical complex")
    p = add("bounded", cmd_bounded, "cells of the bounded complex")
    p.add_argument("--transpose", action="store_true", help="also report the transpose f-vector")
    add("ideals", cmd_ideals, "type, cotype and initial ideals")
    add("betti", cmd_betti, "Betti table from the cell complex and from Hochster's formula")
    add("volume", cmd_volume, "volume and draconian sequences (generic matrices)")
    p = add("lambda", cmd_lambda, "recession connectivity", "matrix file, or graph file with --graph")
    p.add_argument("--graph", action="store_true", help="input is a graph file")
    p.add_argument("--general", action="store_true", help="graph file with arbitrary labels")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    covector.set_enumeration_cap(args.cap)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, TroprezError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        covector.set_enumeration_cap(None)


if __name__ == "__main__":
    sys.exit(main())
