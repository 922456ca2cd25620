import json

import pytest

from conftest import WORKED_H_ROWS
from xcodes.cli import run


def test_construct_then_verify(tmp_path, capsys):
    out = tmp_path / "code.json"
    assert run(["construct", "--m", "8", "--d", "2", "--method", "derand", "--p", "0.1", "--out", str(out)]) == 0
    assert run(["verify", "--in", str(out)]) == 0
    assert "valid (8," in capsys.readouterr().out


def test_construct_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["construct", "--m", "7", "--d", "2", "--p", "0.05", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_reports_witness(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"m": 4, "d": 1, "x": 2, "blocks": [[1, 2, 3], [2, 3, 4], [1, 2, 4]]}))
    assert run(["verify", "--in", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "witness" in out and "{1,2,4}" in out


def test_verify_matrix_needs_parameters(tmp_path, capsys):
    mat = tmp_path / "h.txt"
    mat.write_text("\n".join(WORKED_H_ROWS) + "\n")
    assert run(["verify", "--in", str(mat)]) == 2
    assert run(["verify", "--in", str(mat), "--d", "1", "--x", "1"]) == 0
    assert run(["verify", "--in", str(mat), "--d", "1", "--x", "2"]) == 1


def test_bounds_text_and_json(capsys):
    assert run(["bounds", "--m", "1000", "--d", "2"]) == 0
    text = capsys.readouterr().out
    assert "asymptotic_lower" in text and "207.49" in text
    assert run(["bounds", "--m", "10", "--d", "2", "--p", "0.01", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["expected_codewords"] == pytest.approx(0.7953195)


def test_bounds_csv_and_plot(tmp_path, capsys):
    fig = tmp_path / "bounds.png"
    assert run(["bounds", "--m", "30", "--d", "3", "--optimize-p", "--format", "csv", "--plot", str(fig)]) == 0
    header, row = capsys.readouterr().out.strip().splitlines()
    assert header.startswith("m,d,p,p_source") and row.split(",")[3] == "optimal"
    assert fig.stat().st_size > 0


def test_enumerate(capsys):
    assert run(["enumerate", "--m", "4", "--d", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4 and lines[0] == "{1,2,3} {1,2,4} {1,3,4}"
    assert run(["enumerate", "--m", "5", "--d", "2", "--count-only"]) == 0
    out = capsys.readouterr().out
    assert "size 3: 110" in out and "size 4: 210" in out and "total: 320" in out


def test_search(capsys):
    assert run(["search", "--m", "7", "--d", "1", "--x", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["max_n"] == 7 and len(data["example_blocks"]) == 7


def test_resource_guard_exit_code(monkeypatch, capsys):
    assert run(["search", "--m", "12", "--d", "1", "--x", "2"]) == 3
    monkeypatch.setenv("XCODES_WITNESS_CEILING", "10")
    assert run(["construct", "--m", "6", "--d", "2"]) == 3
    assert run(["enumerate", "--m", "6", "--d", "2", "--count-only"]) == 3


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["construct", "--m", "6"]) == 2
    assert run(["bounds", "--m", "10", "--d", "2", "--p", "2"]) == 2


def test_simulate_worked_example(tmp_path, capsys):
    mat = tmp_path / "h.txt"
    mat.write_text("\n".join(WORKED_H_ROWS) + "\n")
    assert run(["simulate", "--code", str(mat), "--d", "1", "--x", "1",
                "--expected", "X11100", "--observed", "011000"]) == 0
    out = capsys.readouterr().out
    assert "0101" in out and "XX11" in out and "discrepancy: yes" in out
    assert run(["simulate", "--code", str(mat), "--d", "1", "--x", "1", "--expected", "X11100", "--faults", "4"]) == 0
    assert run(["simulate", "--code", str(mat), "--d", "1", "--x", "1", "--expected", "X11100", "--faults", "1"]) == 2


def test_simulate_missed_fault(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"m": 4, "d": 1, "x": 2, "blocks": [[1, 2, 3], [2, 3, 4], [1, 2, 4]]}))
    assert run(["simulate", "--code", str(bad), "--expected", "XX0", "--faults", "3"]) == 1
    assert "MISSED" in capsys.readouterr().out


def test_random_method_and_matrix_output(tmp_path):
    out, rec = tmp_path / "code.txt", tmp_path / "run.json"
    assert run(["construct", "--m", "9", "--d", "2", "--method", "random", "--seed", "4", "--p", "0.05",
                "--format", "matrix", "--out", str(out), "--record", str(rec)]) == 0
    record = json.loads(rec.read_text())
    assert record["seed"] == 4 and record["method"] == "random"
    rows = out.read_text().split()
    assert len(rows) == 9 and all(len(r) == record["final_n"] for r in rows)
    assert run(["verify", "--in", str(out), "--d", "2", "--x", "2"]) == 0 if record["final_n"] else True


def test_trace_plot(tmp_path):
    fig = tmp_path / "trace.png"
    assert run(["construct", "--m", "6", "--d", "2", "--p", "0.1", "--plot", str(fig), "--out", str(tmp_path / "c.json")]) == 0
    assert fig.stat().st_size > 0
