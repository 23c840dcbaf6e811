import csv
import io
import json

import pytest

from gsp_pullback.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_blattner(capsys):
    code, out, _ = run(capsys, "blattner", "--lambda", "4,1", "--weight", "5")
    assert code == 0 and json.loads(out)["multiplicity"] == 1
    code, out, _ = run(capsys, "blattner", "--lambda", "4,1", "--weight", "7,7")
    assert json.loads(out)["multiplicity"] == 1
    code, _, err = run(capsys, "blattner", "--lambda", "3,1", "--weight", "5")
    assert code == 2 and "parity" in json.loads(err)["error"]


def test_zeta(capsys):
    code, out, _ = run(capsys, "zeta")
    d = json.loads(out)
    assert code == 0 and d["agree"] and d["exact"]
    code, out, _ = run(capsys, "zeta", "--depth", "0")
    assert json.loads(out)["series"] == "1/1"
    code, _, err = run(capsys, "zeta", "--s", "-3")
    assert code == 2 and "divergence" in err
    code, out, _ = run(capsys, "zeta", "--s", "5/3")
    d = json.loads(out)
    assert not d["exact"] and "error_bound" in d["series"]


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n", "2", "--kvec", "10,10", "--rmin", "4", "--rmax", "8")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kvec", "r", "A_k(r-1)", "c_krnN"]
    assert [r[1] for r in rows[1:]] == ["4", "6", "8"]
    assert rows[-1][3] == "15/1114112"
    assert '"15/1114112"' in out
    code, _, err = run(capsys, "table", "--kvec", "10,10", "--rmin", "9")
    assert code == 2 and "empty critical range" in err


def test_sweep_and_arch(capsys):
    code, out, _ = run(capsys, "constants", "--sweep", "--kmax", "8", "--level", "2")
    assert code == 0 and len(out.splitlines()) > 3
    code, out, _ = run(capsys, "arch", "--n", "2", "--kvec", "10", "--z", "7")
    d = json.loads(out)
    assert d["A_k_at_z"] == "1/20054016" and d["c_krnN"]["value"] == "15/1114112"


def test_small_commands(capsys):
    _, out, _ = run(capsys, "gauss", "--modulus", "5", "--images", "2")
    assert float(json.loads(out)["gauss_sum"]["re"]) == pytest.approx(5**0.5)
    _, out, _ = run(capsys, "volume", "--n", "2", "--p", "2")
    assert json.loads(out)["order"] == "720"
    _, out, _ = run(capsys, "lfactor", "--modulus", "4", "--images", "1", "--method", "hurwitz")
    assert float(json.loads(out)["L"]["re"]) == pytest.approx(0.9159655941772190)
    _, out, _ = run(capsys, "lfactor", "--n", "1", "--q", "5", "--s", "1")
    assert json.loads(out)["value"] == "125/64"
    _, out, _ = run(capsys, "satake", "--n", "1", "--q", "2", "--volumes", "--depth", "2")
    assert json.loads(out)["volumes"] == ["1/1", "6/1", "24/1"]


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 1\nq = 3\ndepth = 2\nvolumes = true\n")
    _, out, _ = run(capsys, "--config", str(cfg), "satake")
    d = json.loads(out)
    assert d["q"] == 3 and d["depth"] == 2
    _, out, _ = run(capsys, "--config", str(cfg), "satake", "--q", "2")
    assert json.loads(out)["volumes"][1] == "6/1"


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("GSP_PULLBACK_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "volume", "--n", "1", "--p", "3")
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "volume.json").read_text())["order"] == "24"
    target = tmp_path / "x.json"
    run(capsys, "--output", str(target), "volume")
    assert target.exists()


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "measure")
    d = json.loads(out)
    assert code == 0 and d["passed"] and len(d["checks"]) == 6
    code, out, _ = run(capsys, "verify", "--suite", "beta", "--tolerance", "0")
    assert code == 1 and not json.loads(out)["passed"]


def test_verify_all_reproducible(capsys):
    code, first, _ = run(capsys, "verify", "--suite", "all", "--seed", "7")
    assert code == 0
    _, second, _ = run(capsys, "verify", "--suite", "all", "--seed", "7")
    assert first == second
