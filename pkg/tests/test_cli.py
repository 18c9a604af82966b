import csv
import hashlib
import io
import json
import subprocess
import sys

import pytest

from meixner_asym.cli import COMPARE_HEADER, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_exact_example(capsys):
    code, out, _ = run(capsys, "eval", "--mode", "exact", "--n", "2", "--c", "0.5", "--beta", "1", "--z", "3,0")
    assert code == 0
    assert "value=-4 " in out


def test_eval_both_reports_rel_err(capsys):
    code, out, _ = run(capsys, "eval", "--mode", "both", "--n", "100", "--z", "7,0", "--format", "jsonl")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[1]["formula"] == "outside"
    assert recs[2]["rel_err"] <= 0.05


def test_eval_asym_large_n_is_log_only(capsys):
    code, out, _ = run(capsys, "eval", "--mode", "asym", "--n", "5000", "--z", "7,0")
    assert code == 0
    assert "log_abs=" in out and "value=" not in out


def test_exit_codes(capsys):
    assert run(capsys, "eval", "--mode", "asym", "--z", "0,0")[0] == 3
    assert run(capsys, "eval", "--mode", "asym", "--c", "1.5", "--z", "7,0")[0] == 2
    assert run(capsys, "eval", "--mode", "asym", "--z", "nonsense")[0] == 2
    assert run(capsys, "eval", "--mode", "exact", "--n", "300", "--z", "150.5,0", "--bits", "128")[0] in (0, 4)
    assert run(capsys, "compare", "--n-list", "64,32", "--z", "7,0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--mode", "wrong"])
    assert exc.value.code == 2


def test_compare_rows_and_fit(capsys):
    code, out, err = run(capsys, "compare", "--n-list", "32,64,128,256", "--z", "7,0", "--fit")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == COMPARE_HEADER
    errs = [float(r[-1]) for r in rows[1:]]
    assert errs == sorted(errs, reverse=True)
    order = float(err.split("order=")[1].split()[0])
    assert order >= 0.8


def test_compare_formula_flips_at_boundary(capsys):
    code, out, _ = run(capsys, "compare", "--n", "200", "--beta", "1.5", "--grid", "0.9,1.1,0,0", "--step", "0.05")
    rows = list(csv.DictReader(io.StringIO(out)))
    flips = [(float(r["re_z"]), r["formula_used"]) for r in rows]
    assert [f for x, f in flips if x <= 1.0] == ["inside"] * 3
    assert [f for x, f in flips if x > 1.0] == ["outside"] * 2


def test_compare_marks_singular_rows(capsys):
    code, out, _ = run(capsys, "compare", "--n", "20", "--grid=-0.5,0.5,0,0", "--step", "0.5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["formula_used"] for r in rows] == ["outside", "singular", "inside"]
    assert rows[1]["rel_err"] == "nan"


def test_compare_empty_grid(capsys):
    code, out, _ = run(capsys, "compare", "--grid", "1,0,0,0", "--step", "0.1")
    assert code == 0
    assert out.strip() == ",".join(COMPARE_HEADER)


def test_compare_parallel_matches_serial(tmp_path, capsys):
    args = ["compare", "--n-list", "16,32", "--grid=0.2,2,-0.2,0.2", "--step", "0.6"]
    run(capsys, *args, "--out", str(tmp_path / "a.csv"))
    run(capsys, *args, "--jobs", "3", "--out", str(tmp_path / "b.csv"))
    a, b = (tmp_path / "a.csv").read_bytes(), (tmp_path / "b.csv").read_bytes()
    assert a == b
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".tmp-")]


def test_regions_counts_and_determinism(tmp_path, capsys):
    digests = []
    for k in range(2):
        path = tmp_path / f"r{k}.csv"
        assert run(capsys, "regions", "--points", "100,100", "--out", str(path))[0] == 0
        digests.append(hashlib.sha256(path.read_bytes()).hexdigest())
    assert digests[0] == digests[1]
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert len(rows) == 10000
    kinds = {r["kind"] for r in rows}
    assert kinds == {"inside", "outside", "boundary"}
    assert len({(r["a"], r["b"]) for r in rows}) == 1


def test_turning_points_exact_for_rational_c(capsys):
    code, out, _ = run(capsys, "turning-points", "--c", "1/4")
    assert out.splitlines()[1].startswith("1/3,3,1,")


def test_verify_suite_json(tmp_path, capsys):
    path = tmp_path / "v.json"
    assert run(capsys, "verify", "--suite", "phi", "--out", str(path))[0] == 0
    payload = json.loads(path.read_text())
    assert payload["passed"] and payload["suites"][0]["suite"] == "phi"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "meixner_asym", "turning-points", "--c", "0.25"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[0] == "a,b,ab,default_delta"
