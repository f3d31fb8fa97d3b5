from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from troprez.cli import main, parse_general_graph, parse_graph, parse_matrix
from troprez.errors import InputError, InvalidMatrix, NotBipartite
from troprez.fixtures import RUNNING
from troprez.graphcore import support_graph

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden" / "running_report.json"


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path: Path, name: str, text: str) -> Path:
    p = tmp_path / name
    p.write_text(text)
    return p


def test_parsers():
    assert parse_matrix((DATA / "running.txt").read_text()) == RUNNING
    assert parse_graph((DATA / "running_graph.txt").read_text()) == support_graph(RUNNING)
    with pytest.raises(InputError):
        parse_matrix("# only a comment\n\n")
    with pytest.raises(InvalidMatrix):
        parse_matrix("0 x\n")
    with pytest.raises(InputError):
        parse_graph("0 1\n")
    with pytest.raises(NotBipartite):
        parse_general_graph((DATA / "triangle.txt").read_text())
    B = parse_general_graph("a b\nb c\nc d\nd a\n")
    assert (B.d, B.n, len(B)) == (2, 2, 4)


def test_analyze_matches_golden_report(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "running.txt")
    assert code == 0
    assert out == GOLDEN.read_text()
    report = json.loads(out)
    assert report["regularity"] == 2 and report["lambda"] == 3 and report["krull_dim"] == 6
    assert report["f_vector"] == {"complex": [6, 16, 11], "bounded": [6, 7, 2]}
    assert report["generic"] is True
    assert len(report["fine_cotype_ideal"]) == 6
    assert report["initial_ideal_monomial_part"] == report["cotype_ideal_dual"]
    assert report["betti"]["cellular"] == report["betti"]["hochster"]
    assert "timing_seconds" not in report


def test_analyze_degenerate(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "degenerate.txt")
    report = json.loads(out)
    assert code == 0 and report["generic"] is False
    assert len(report["initial_ideal_monomial_part"]) == 3
    assert "omitted" in report["volume"] and "omitted" in report["draconian_sequences"]
    assert report["toric_edge_ideal"][0]["leading"] == "Tie"


def test_analyze_disconnected_and_graphic(tmp_path, capsys):
    p = write(tmp_path, "split.txt", "0 inf\ninf 0\n")
    code, out, _ = run(capsys, "analyze", p)
    report = json.loads(out)
    assert code == 0 and report["connected"] is False
    assert "omitted" in report["lambda"] and report["f_vector"]["bounded"] == []
    g = write(tmp_path, "square.txt", "0 inf inf 0\n0 1 inf inf\ninf 2 4 inf\ninf inf 6 9\n")
    report = json.loads(run(capsys, "analyze", g)[1])
    assert report["zonotope"]["spanning_trees"] == 4 and report["zonotope"]["forests"] == 15
    assert report["volume"] == "4"


def test_analyze_timing_is_opt_in(capsys):
    report = json.loads(run(capsys, "analyze", DATA / "k32.txt", "--timing")[1])
    assert report["timing_seconds"] >= 0


def test_input_errors_exit_two(tmp_path, capsys):
    empty = write(tmp_path, "empty.txt", "")
    code, _, err = run(capsys, "analyze", empty)
    assert code == 2 and "error" in err
    assert run(capsys, "analyze", tmp_path / "missing.txt")[0] == 2
    assert run(capsys, "analyze", write(tmp_path, "bad.txt", "0 1\n2\n"))[0] == 2
    assert run(capsys, "volume", DATA / "degenerate.txt")[0] == 2


def test_caps_exit_three(capsys, monkeypatch):
    assert run(capsys, "types", DATA / "running.txt", "--cap", "5")[0] == 3
    # the override is cleared after each invocation
    assert run(capsys, "types", DATA / "running.txt")[0] == 0
    monkeypatch.setenv("TROPREZ_CAP", "4")
    assert run(capsys, "analyze", DATA / "running.txt")[0] == 3


def test_check_builtin_corpus(capsys):
    code, out, _ = run(capsys, "check")
    lines = out.strip().splitlines()
    assert code == 0
    assert all(line.startswith("PASS ") for line in lines[:-1])
    assert lines[-1].endswith("checks passed")


def test_check_selftest_negative(capsys):
    code, out, _ = run(capsys, "check", "--selftest-negative")
    assert code == 1
    assert any(line.startswith("FAIL ") for line in out.splitlines())


def test_check_duality_example(tmp_path, capsys):
    p = write(tmp_path, "dual.txt", "0 0\n0 1\n0 2\n")
    code, out, _ = run(capsys, "check", p)
    assert code == 0
    assert any("transpose ((3, 2) vs (3, 2))" in line and line.startswith("PASS") for line in out.splitlines())


def test_edge_ideal(capsys):
    code, out, _ = run(capsys, "edge-ideal", DATA / "running_graph.txt")
    assert code == 0
    assert out.splitlines() == [
        "x_1_1*x_2_2 - x_1_2*x_2_1",
        "x_1_1*x_2_4 - x_1_4*x_2_1",
        "x_1_2*x_2_4 - x_1_4*x_2_2",
        "x_2_1*x_3_3 - x_2_3*x_3_1",
    ]
    assert run(capsys, "edge-ideal", DATA / "tree.txt") == (0, "", "")
    assert run(capsys, "edge-ideal", DATA / "triangle.txt", "--general")[0] == 2
    assert run(capsys, "edge-ideal", DATA / "triangle.txt")[0] == 2


def test_types_and_bounded(capsys):
    code, out, _ = run(capsys, "types", DATA / "running.txt")
    cells = json.loads(out)
    assert code == 0 and len(cells) == 33
    assert sum(c["bounded"] for c in cells) == 15
    code, out, _ = run(capsys, "bounded", DATA / "k32.txt", "--transpose")
    payload = json.loads(out)
    assert payload["f_vector"] == payload["transpose_f_vector"] == [3, 2]
    code, out, _ = run(capsys, "bounded", DATA / "running.txt", "--pretty")
    assert out.startswith("f-vector [6, 7, 2]")


def test_ideals_and_betti(capsys):
    ideals = json.loads(run(capsys, "ideals", DATA / "running.txt")[1])
    assert set(ideals) >= {"fine_cotype_ideal", "initial_ideal_monomial_part", "toric_edge_ideal"}
    for field_ in ("gf2", "qq"):
        code, out, _ = run(capsys, "betti", DATA / "running.txt", "--field", field_)
        payload = json.loads(out)
        assert code == 0 and payload["agree"] is True and payload["field"] == field_
        assert [row["count"] for row in payload["cellular"]["table"]] == [6, 7, 2]


def test_volume_and_lambda(capsys):
    payload = json.loads(run(capsys, "volume", DATA / "k32.txt")[1])
    assert payload == {"volume": "2", "draconian_sequences": [[0, 2], [1, 1], [2, 0]]}
    payload = json.loads(run(capsys, "lambda", DATA / "running.txt")[1])
    assert payload["lambda"] == 3 and payload["regularity"] == 2
    assert len(payload["witness_forest"]) == 7 - 3
    assert json.loads(run(capsys, "lambda", DATA / "running_graph.txt", "--graph")[1])["lambda"] == 3
    assert json.loads(run(capsys, "lambda", DATA / "tree.txt", "--graph")[1])["lambda"] == 1
    code, out, _ = run(capsys, "lambda", DATA / "running.txt", "--pretty")
    assert "lambda: 3" in out.splitlines()


def test_output_is_byte_identical_across_processes():
    outputs = set()
    for hash_seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        proc = subprocess.run(
            [sys.executable, "-m", "troprez", "analyze", str(DATA / "running.txt"), "--seed", "3"],
            capture_output=True, env=env, check=True,
        )
        outputs.add(proc.stdout)
    assert len(outputs) == 1
