import csv
import io
import json
import subprocess
import sys

from hilbbir.cli import main
from hilbbir.serialize import INT64_MAX, wide_ints


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--n", "6", "--t", "2")
    assert code == 0
    rec = json.loads(out)
    assert rec["group"] == "Z2" and rec["nu"] == [5, -3] and rec["invariant"] == "⟨10⟩"
    assert set(rec) == {
        "n", "t", "group", "aut", "case_jk", "symplectic", "nu", "invariant", "chambers",
        "walls", "irregular", "biregular", "regularizable", "not_hilbert_model",
    }
    assert set(rec["walls"][0]) == {"alpha", "rho", "X", "Y", "ray"}


def test_classify_table2_row(capsys):
    rec = json.loads(run(capsys, "classify", "--n", "3", "--t", "13")[1])
    assert (rec["aut"], rec["group"], rec["chambers"]) == ("Z2", "Z2", 1)


def test_classify_natural(capsys):
    rec = json.loads(run(capsys, "classify", "--n", "2", "--t", "1")[1])
    assert rec["group"] == rec["aut"] == "Z2" and rec["nu"] is None


def test_usage_errors(capsys):
    code, _, err = run(capsys, "classify", "--n", "1", "--t", "3")
    assert code == 2 and "n must be >= 2" in err
    assert run(capsys, "classify", "--n", "3")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "classify", "--n", "3", "--t", "3", "--format", "xml")[0] == 2
    assert run(capsys, "pell", "--r", "9", "--m", "4")[0] == 2
    assert run(capsys, "classify", "--n-range", "5:2", "--t", "1")[0] == 2


def test_invariant_violation_exit_code(capsys, monkeypatch):
    from hilbbir import cli
    from hilbbir.exceptions import InvariantViolation

    def boom(n, t):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "_classify_cell", boom)
    code, _, err = run(capsys, "classify", "--n", "3", "--t", "5")
    assert code == 3 and "(3, 5)" in err


def test_grid_order_and_parallel_determinism(capsys):
    serial = run(capsys, "classify", "--n-range", "2:4", "--t-range", "1:12", "--format", "csv")[1]
    parallel = run(capsys, "classify", "--n-range", "2:4", "--t-range", "1:12", "--format", "csv", "--jobs", "2")[1]
    assert serial == parallel
    rows = list(csv.DictReader(io.StringIO(serial)))
    assert [(int(r["n"]), int(r["t"])) for r in rows] == [(n, t) for n in range(2, 5) for t in range(1, 13)]


def test_json_round_trip_and_determinism(capsys):
    a = run(capsys, "classify", "--n-range", "2:3", "--t-range", "2:20")[1]
    b = run(capsys, "classify", "--n-range", "2:3", "--t-range", "2:20")[1]
    assert a == b
    data = json.loads(a)
    assert json.loads(json.dumps(data, ensure_ascii=False)) == data


def test_wide_ints():
    big = INT64_MAX + 1
    assert wide_ints({"x": [big, 5, -big, True]}) == {"x": [str(big), 5, str(-big), True]}


def test_big_unit_serialized_as_string(capsys):
    # the unit of 277 is 21 digits long
    rec = json.loads(run(capsys, "chambers", "--n", "2", "--t", "277")[1])
    assert isinstance(rec["extremal_high"][0], str) and int(rec["extremal_high"][0]) > INT64_MAX


def test_tables(capsys):
    md = run(capsys, "table", "table1", "--format", "md")[1]
    assert "| 11 | 11,19,41,49,121 | / |" in md
    assert "| 14 | 14,17,22,38,49,53,77,121,133 | 5 |" in md
    rows = json.loads(run(capsys, "table", "table2")[1])
    assert {"t": 29, "d": 3, "aut": "Trivial", "bir": "Z2"} in rows
    code, out, _ = run(capsys, "table", "prop54", "--t-max", "300")
    assert code == 0 and len(json.loads(out)) == 18


def test_scan_conjecture_ambiguity(capsys):
    rec = json.loads(run(capsys, "scan-irregular", "--n", "8")[1])
    assert [t for t, _ in rec["irregular"]] == [2, 4, 8, 11, 16, 29, 37]
    rec = json.loads(run(capsys, "conjecture", "--n-max", "14", "--k-max", "10")[1])
    assert rec["verdict"] == "no counterexamples"
    rec = json.loads(run(capsys, "ambiguity", "--n", "2", "--t", "6", "--verify")[1])
    assert rec["partner"] == "M_S(2, H, 3)" and rec["partner_isomorphic"] is False


def test_pell_and_out_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    assert run(capsys, "pell", "--r", "20", "--m", "5", "--out", str(path))[0] == 0
    rec = json.loads(path.read_text(encoding="utf-8"))
    assert rec["classes"] == [{"X": 5, "Y": 1, "conjugate_flag": True}]


def test_console_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "hilbbir.cli", "classify", "--n", "8", "--t", "2", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "[2,-1]" in proc.stdout
