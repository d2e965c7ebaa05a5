import json
import subprocess
import sys

import pytest

from snc_hodge import cli, goldens
from snc_hodge.goldens import Golden


def run_json(capsys, *argv):
    code = cli.run([*argv, "--format", "json"])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_analyze_hopf_degree_one(capsys):
    code, rep, _ = run_json(capsys, "analyze", "scenario:hopf-f1", "--degree", "1")
    assert code == 0
    assert rep["schema"] == "snc-hodge/report/1"
    assert {"rho", "two_pi_i", "hr_prefactor", "pure_hs"} <= set(rep["conventions"])
    (rec,) = rep["degrees"]
    assert rec["pure_hs"] is False
    assert rec["n1"]["witness"]["reason"] == "high dim 0 ≠ low dim 1"


def test_analyze_clemens_reports_surjectivity_note(capsys):
    code, rep, _ = run_json(capsys, "analyze", "scenario:clemens", "--param", "l=2")
    assert code == 0
    assert rep["betti"][2] == 0
    assert rep["rho_surjectivity"] == {"degree": 2, "rank": 3, "target_dim": 4, "surjective": False,
                                       "ker_gamma_dim": 1}
    assert any("not surjective" in n for n in rep["notes"])
    assert rep["condition_star"]["holds"] is True


def test_analyze_clemens_l1_has_no_note(capsys):
    code, rep, _ = run_json(capsys, "analyze", "scenario:clemens", "--param", "l=1")
    assert code == 0 and rep["rho_surjectivity"]["surjective"]
    assert not any("not surjective" in n for n in rep["notes"])


def test_reports_are_deterministic(capsys):
    argv = ["bundle", "L", "--input", "scenario:hashimoto-sano", "--fiber", "--format", "json"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    assert capsys.readouterr().out == first


def test_bundle_fiber_checks(capsys):
    code, rep, _ = run_json(capsys, "bundle", "L", "--input", "scenario:hashimoto-sano", "--fiber")
    assert code == 0
    f = rep["bundle"]["fiber"]
    assert f["top_power"] == "-804/1+0/1*i"  # JSON scalars use the canonical exact form
    assert f["lefschetz"] is True and f["five_lemma_consistent"] is True
    assert f["h2_hodge_riemann"]["L"]["verdict"] is False


def test_bundle_that_does_not_glue(capsys):
    code, rep, _ = run_json(capsys, "bundle", "L_printed", "--input", "scenario:clemens")
    assert code == 0
    assert rep["bundle"]["glued"] is False
    assert rep["bundle"]["gluing_residual"] != [["0"], ["0"]]


def test_unknown_bundle_is_a_usage_error(capsys):
    code, rep, _ = run_json(capsys, "bundle", "nope", "--input", "scenario:hopf-f1")
    assert code == 2 and "unknown bundle" in rep["status"]


def test_condition_star_modes(capsys):
    code, rep, _ = run_json(capsys, "condition-star", "--input", "scenario:quintic-tyurin")
    assert code == 0 and rep["condition_star"]["holds"] is True
    code, rep, _ = run_json(capsys, "condition-star", "--input", "scenario:quintic-tyurin", "--mode", "exact")
    assert code == 3 and "explicit Hodge bases" in rep["status"]


def test_reproduce_hashimoto_sano(capsys):
    code, rep, _ = run_json(capsys, "reproduce", "hashimoto-sano", "--param", "a=1")
    assert code == 0 and rep["status"] == "PASS"
    by_key = {r["key"]: r for r in rep["results"]}
    assert by_key["fiber_block_det"]["computed"] == "496"
    assert by_key["L_cubed"]["computed"] == "-804"
    # the stated -116 disagrees with the stated classes; it is surfaced, not hidden
    d = by_key["Delta21_sq_L"]
    assert d["expected"] == "-116" and d["status"] == "KNOWN-DEVIATION"
    assert by_key["Delta21_sq_L_from_classes"]["status"] == "PASS"


@pytest.mark.parametrize("sid", ["hopf-f1", "clemens", "quintic-tyurin", "conic-product"])
def test_reproduce_passes(capsys, sid):
    code, rep, _ = run_json(capsys, "reproduce", sid)
    assert code == 0
    assert all(r["status"] == "PASS" for r in rep["results"])


def test_reproduce_mismatch_exits_4(capsys, monkeypatch):
    broken = [Golden("b1", lambda p: 7, goldens.HOPF[4].measure, "PAPER", "first Betti number")]
    monkeypatch.setitem(goldens.GOLDENS, "hopf-f1", broken)
    code = cli.run(["reproduce", "hopf-f1"])
    out = capsys.readouterr().out
    assert code == 4
    assert "FAIL" in out and "expected 7" in out and "first Betti number" in out


def test_schema_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "snc-hodge/input/1",\n "n": }')
    assert cli.run(["analyze", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert cli.run(["analyze", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()
    assert cli.run(["analyze", "scenario:hopf-f1", "--param", "a=1"]) == 2
    assert "invalid-params" in capsys.readouterr().err


def test_blocking_findings_exit_3(capsys, tmp_path):
    cli.run(["export", "hopf-f1"])
    doc = json.loads(capsys.readouterr().out)
    name = doc["components"][0]
    doc["packages"][name]["pairing"]["2"] = [["0", "0"], ["0", "0"]]
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(doc))
    code, rep, _ = run_json(capsys, "analyze", str(path))
    assert code == 3
    assert rep["status"].startswith("refused")
    assert "degrees" not in rep


def test_dimension_cap_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("SNC_HODGE_MAX_DIM", "100")
    code, rep, _ = run_json(capsys, "analyze", "scenario:clemens")
    assert code == 3
    assert any(f.startswith("dimension-cap") for f in rep["findings"])


def test_export_then_analyze_file(capsys, tmp_path):
    path = tmp_path / "hopf.json"
    assert cli.run(["export", "hopf-f1", "--out", str(path)]) == 0
    code, rep, _ = run_json(capsys, "analyze", str(path))
    assert code == 0
    assert rep["betti"] == [1, 1, 0, 1, 1]
    code2, rep2, _ = run_json(capsys, "analyze", "scenario:hopf-f1")
    assert rep2["input"]["digest"] == rep["input"]["digest"]


def test_text_format_and_out_flag(capsys, tmp_path):
    out = tmp_path / "r.txt"
    assert cli.run(["analyze", "scenario:hopf-f1", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# snc-hodge/report/1") and "pure_hs" in text


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "snc_hodge", "reproduce", "conic-product"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0, r.stderr
    assert "PASS" in r.stdout
