import json

import pytest

from ribbonx.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_dk1(capsys):
    code, out, _ = run(capsys, "verify", "dk1")
    assert code == 0
    assert out.rstrip().endswith("result: pass")


def test_verify_z2_json(capsys):
    code, out, _ = run(capsys, "verify", "z2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["dim"] == 2 and doc["seed"] == 1729


def test_verify_corrupt_antipode(capsys):
    code, out, err = run(capsys, "verify", "--corrupt-antipode", "dk1")
    assert code == 1
    assert "FAIL" in out
    assert "antipode" in err and ":" in err


def test_unknown_algebra(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 2 and "unknown algebra" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["report", "no-such-table"])
    assert exc.value.code == 2


def test_size_limit(capsys, monkeypatch):
    monkeypatch.setenv("RIBBONX_MAX_DIM", "20")
    code, _, err = run(capsys, "extend", "dk1")
    assert code == 2 and "RIBBONX_MAX_DIM" in err


def test_extend_dk1(capsys, tmp_path):
    out_path = tmp_path / "dk1.json"
    code, out, _ = run(capsys, "extend", "dk1", "--format", "json", "--out", str(out_path))
    assert code == 0 and out == ""
    doc = json.loads(out_path.read_text())
    assert doc["algebra"]["dim"] == 32
    assert set(doc["algebra"]["sidecar"]) == {"v_index", "embedding", "projection"}
    titles = {r["title"]: r for r in doc["reports"]}
    assert titles["Sommerhauser decomposition DK1"]["passed"]
    skipped = titles["ribbon tensor decomposition: DK1"]
    assert skipped["checks"] == [] and "skipped" in skipped["notes"][0]
    # the emitted document loads back and verifies
    code, _, _ = run(capsys, "verify", str(out_path))
    assert code == 0


def test_extend_h4(capsys):
    code, out, _ = run(capsys, "extend", "h4", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    titles = [r["title"] for r in doc["reports"]]
    assert "Sommerhauser decomposition H4" in titles
    assert "ribbon tensor decomposition H4" in titles


def test_extend_trivial(capsys):
    code, out, _ = run(capsys, "extend", "trivial", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["algebra"]["dim"] == 2


def test_extend_no_verify(capsys):
    code, out, _ = run(capsys, "extend", "z2", "--no-verify", "--format", "json")
    assert code == 0 and json.loads(out)["reports"] == []


def test_tilde_spec(capsys):
    code, out, _ = run(capsys, "verify", "tilde:z2", "--format", "json")
    assert code == 0 and json.loads(out)["dim"] == 4


def test_byte_identical(capsys):
    _, a, _ = run(capsys, "report", "fusion-n1", "--format", "json")
    _, b, _ = run(capsys, "report", "fusion-n1", "--format", "json")
    assert a == b


def test_report_cartan(capsys):
    code, out, _ = run(capsys, "report", "cartan-n1")
    assert code == 0
    assert "| P1+ | 2 | 0 | 0 | 2 | 0 | 0 | 0 | 0 |" in out


def test_report_drinfeld(capsys):
    code, out, _ = run(capsys, "report", "drinfeld-forms-n1")
    assert code == 0 and out.count("| match |") == 5


def test_report_fusion_open_question(capsys):
    code, out, _ = run(capsys, "report", "fusion-n1")
    assert code == 0
    assert "### Open questions" in out and "SMb" in out


def test_module_command(capsys):
    code, out, _ = run(capsys, "module", "P1+", "--decompose", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summands"] == ["P1+"] and doc["module"]["dim"] == 4
    code, _, _ = run(capsys, "module", "Q9")
    assert code == 2
