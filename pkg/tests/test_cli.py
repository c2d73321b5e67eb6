import csv
import io
import json
import subprocess
import sys

import pytest

from borelrange import weyl
from borelrange.cli import UsageError, main, parse_n_range, parse_weights


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def _no_stray_cache(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("STABLE_RANGE_CACHE", raising=False)
    weyl.clear_memo()


def test_parse_n_range():
    assert parse_n_range("5") == [5]
    assert parse_n_range("4..6") == [4, 5, 6]
    assert parse_n_range("3,5") == [3, 5]
    for bad in ("", "x", "6..4", "1..2..3"):
        with pytest.raises(UsageError):
            parse_n_range(bad)


def test_parse_weights():
    assert [h.coeffs for h in parse_weights("trivial", 3)] == [(0, 0, 0)]
    assert [h.coeffs for h in parse_weights("0,2,0", 3)] == [(0, 2, 0)]
    assert [h.coeffs for h in parse_weights("phi2", 3)] == [(0, 1, 0)]
    assert [h.coeffs for h in parse_weights("3*phi1", 2)] == [(3, 0)]
    assert len(parse_weights("box:2", 3)) == 27
    for bad in ("phi4", "1,2", "-1,0,0", "box:x", "psi1"):
        with pytest.raises(UsageError):
            parse_weights(bad, 3)


def test_table_text_counterexample():
    code, out = run("table", "--group", "so", "--n", "3", "--weight", "0,2,0", "--no-cache")
    assert code == 0
    assert "outside the type D stability hypothesis" in out
    assert "0" in out.split("\n")[-2]


def test_table_json_and_csv():
    code, out = run("table", "--group", "sp", "--n", "3..4", "--format", "json", "--no-cache")
    rows = json.loads(out)
    assert code == 0
    assert [(r["n"], r["C_literal"], r["C_prefix"]) for r in rows] == [(3, 2, 2), (4, 3, 3)]
    code, out = run("table", "--group", "sp", "--n", "3..4", "--format", "csv", "--no-cache")
    table = list(csv.DictReader(io.StringIO(out)))
    assert [r["C_literal"] for r in table] == ["2", "3"]


def test_table_rows_sorted_and_parallel_matches_serial():
    args = ["table", "--group", "so", "--n", "4,5", "--weight", "box:1", "--format", "json", "--no-cache"]
    _, serial = run(*args)
    _, parallel = run(*args, "--jobs", "4")
    assert serial == parallel
    rows = json.loads(serial)
    keys = [(r["n"], r["lambda"]) for r in rows]
    assert keys == sorted(keys)


def test_table_tex():
    code, out = run("table", "--group", "so", "--n", "4", "--weight", "phi3", "--format", "tex", "--no-cache")
    assert code == 0
    assert "\\begin{tabular}" in out and "\\frac{1}{2}" in out


def test_table_with_c_small():
    _, out = run("table", "--group", "sp", "--n", "3", "--with-c-small", "--format", "json", "--no-cache")
    assert json.loads(out)[0]["c_small"] == 1


def test_report_json_round_trip():
    code, out = run("report", "--group", "so", "--n", "5", "--weight", "phi2", "--no-cache")
    assert code == 0
    r = json.loads(out)
    assert r["C_literal"] == 3 and r["guaranteed_degree"] == 3
    assert r["witness"]["failing_index"] == 1
    assert json.loads(json.dumps(r)) == r


def test_report_text():
    code, out = run("report", "--group", "d", "--n", "4", "--format", "text", "--no-cache")
    assert code == 0 and "C_literal: 2" in out


def test_report_rejects_ranges():
    assert run("report", "--group", "so", "--n", "4..5")[0] == 2
    assert run("report", "--group", "so", "--n", "4", "--weight", "box:1")[0] == 2


def test_weyl_count():
    code, out = run("weyl-count", "--group", "so", "--n", "4", "--palindrome", "--format", "json", "--no-cache")
    r = json.loads(out)
    assert code == 0
    assert r["total"] == r["order"] == 192
    assert r["counts"] == [1, 4, 9, 16, 23, 28, 30, 28, 23, 16, 9, 4, 1]
    assert r["palindrome"] == "PASS"
    code, out = run("weyl-count", "--group", "sp", "--n", "3", "--qmax", "2", "--no-cache")
    assert code == 0 and "|W^2| = 5" in out


def test_usage_errors():
    assert run()[0] == 2
    assert run("table", "--group", "g2", "--n", "3")[0] == 2
    assert run("table", "--group", "so", "--n", "1")[0] == 2
    assert run("table", "--group", "so", "--n", "3", "--jobs", "0")[0] == 2
    assert run("weyl-count", "--group", "so", "--n", "4", "--qmax", "3", "--palindrome")[0] == 2


def test_budget_exit_code():
    code, _ = run("weyl-count", "--group", "so", "--n", "7", "--budget", "1000", "--no-cache")
    assert code == 3
    code, out = run("table", "--group", "so", "--n", "7", "--budget", "1000", "--format", "json", "--no-cache")
    assert code == 3
    assert "error" in json.loads(out)[0]


def test_cache_dir_precedence(tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("STABLE_RANGE_CACHE", str(env_dir))
    weyl.clear_memo()
    run("weyl-count", "--group", "sp", "--n", "3")
    assert (env_dir / "C3.wstrata").exists()
    weyl.clear_memo()
    run("weyl-count", "--group", "sp", "--n", "3", "--cache-dir", str(flag_dir))
    assert (flag_dir / "C3.wstrata").exists()
    monkeypatch.delenv("STABLE_RANGE_CACHE")
    weyl.clear_memo()
    run("weyl-count", "--group", "sp", "--n", "2")
    assert (tmp_path / ".cache" / "C2.wstrata").exists()
    weyl.clear_memo()
    run("weyl-count", "--group", "sp", "--n", "4", "--no-cache")
    assert not (tmp_path / ".cache" / "C4.wstrata").exists()


def test_corrupt_cache_exit_code(tmp_path):
    weyl.clear_memo()
    run("weyl-count", "--group", "sp", "--n", "3", "--cache-dir", str(tmp_path))
    path = tmp_path / "C3.wstrata"
    data = bytearray(path.read_bytes())
    data[-1] ^= 0xFF
    path.write_bytes(bytes(data))
    weyl.clear_memo()
    assert run("weyl-count", "--group", "sp", "--n", "3", "--cache-dir", str(tmp_path))[0] == 4


def test_verify_paper_small(tmp_path):
    code, out = run("verify-paper", "--max-n", "4", "--cache-dir", str(tmp_path))
    lines = out.splitlines()
    assert lines[0] == "stable-range verification (max n = 4)"
    status = {l.split()[1].rstrip(":"): l.split()[0] for l in lines if l[:4] in ("PASS", "FAIL", "ERRO", "SKIP")}
    assert status["so-trivial"] == "PASS"
    assert status["so3-counterexample"] == "PASS"
    assert status["so3-coefficient"] == "FAIL"
    assert code == 1


def test_verify_paper_json(tmp_path):
    _, out = run("verify-paper", "--max-n", "3", "--format", "json", "--no-cache")
    r = json.loads(out)
    assert r["max_n"] == 3
    assert [c["key"] for c in r["claims"]][:2] == ["so-trivial", "sp-trivial"]


def test_injected_fault_is_caught():
    weyl.clear_memo()
    code, out = run("verify-paper", "--max-n", "4", "--inject-fault", "--no-cache")
    assert code == 4
    trivial = next(l for l in out.splitlines() if "so-trivial:" in l)
    assert not trivial.startswith("PASS")
    sp = next(l for l in out.splitlines() if "sp-trivial:" in l)
    assert sp.startswith("PASS")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "borelrange", "report", "--group", "sp",
                           "--n", "3", "--no-cache"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["C_literal"] == 2
