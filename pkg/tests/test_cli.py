import io
import json

import pytest

from clonoids.cli import run
from clonoids.golden import suite_path


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_parity():
    code, out, _ = _run("classify", "--fn", "3:96", "--source", "Sc")
    assert code == 0 and out == "F^{01}_{01}\n"


def test_classify_lambda_json():
    code, out, _ = _run("classify", "--lambda", "101", "--source", "Mc", "--format", "json")
    assert code == 0
    assert json.loads(out)["label"] == "A2_11"


def test_enumerate_omega():
    code, out, _ = _run("enumerate", "--source", "Omega", "--target", "Ic")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "5 clonoids" and len(lines) == 6


def test_enumerate_json_and_dot():
    code, out, _ = _run("enumerate", "--source", "Omega", "--target", "Ic", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 5
    code, out, _ = _run("enumerate", "--source", "Omega", "--target", "Ic", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_closure_reports_match():
    code, out, _ = _run("closure", "--lambda", "101", "--source", "Mc", "--target", "Vc")
    assert code == 0
    assert out.splitlines()[-1] == "matches: A<=2_11"


def test_stable_pass_and_fail():
    code, out, _ = _run("stable", "--class", "Eq", "--source", "Tc", "--target", "Omega")
    assert code == 0 and out.count("PASS") == 2
    code, out, _ = _run("stable", "--class", "A<=2_11", "--source", "Lc", "--cap", "3")
    assert code == 1 and out.startswith("FAIL") and "2:9 * 3:96 = 4:9669" in out


def test_stable_largest():
    code, out, _ = _run("stable", "--class", "OX", "--largest")
    assert code == 0 and "right T0 left T0" in out


def test_hasse_outputs(tmp_path):
    target = tmp_path / "lattice.dot"
    code, out, _ = _run("hasse", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("digraph")
    code, out, _ = _run("hasse", "--source", "Omega", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 2


def test_list_clones():
    code, out, _ = _run("list-clones")
    assert code == 0 and any(ln.startswith("Omega\t") for ln in out.splitlines())


@pytest.mark.parametrize("argv", [
    ("classify", "--fn", "3:96", "--source", "Bogus"),
    ("classify", "--fn", "3:96", "--source", "Lc"),
    ("classify", "--fn", "2:1FF", "--source", "Sc"),
    ("classify", "--source", "Sc"),
    ("stable", "--class", "Nope", "--source", "Mc"),
    ("enumerate", "--source", "Lc", "--target", "Lc"),
    ("closure", "--fn", "2:8", "--source", "Mc", "--target", "Vc", "--cap", "9"),
    ("tables", "--golden", "x.json"),
    ("frobnicate",),
])
def test_usage_errors_exit_two(argv, capsys):
    code, _, err = _run(*argv)
    assert code == 2


def test_unknown_clone_lists_valid_names():
    _, _, err = _run("classify", "--fn", "3:96", "--source", "Bogus")
    assert "Omega" in err and "Sc" in err


def test_env_cap(monkeypatch):
    monkeypatch.setenv("CLONOID_CAP", "2")
    code, out, _ = _run("closure", "--fn", "2:8", "--source", "Mc", "--target", "Ic", "--format", "json")
    assert code == 0 and json.loads(out)["cap"] == 2
    monkeypatch.setenv("CLONOID_CAP", "7")
    code, _, _ = _run("closure", "--fn", "2:8", "--source", "Mc", "--target", "Ic")
    assert code == 2


def test_output_is_deterministic():
    a = _run("enumerate", "--source", "Tc", "--target", "Ic", "--format", "dot")
    b = _run("enumerate", "--source", "Tc", "--target", "Ic", "--format", "dot")
    assert a == b


def test_tables_counts_and_witnesses():
    code, out, _ = _run("tables", "--suite", "counts", "--suite", "witnesses")
    assert code == 0 and "FAIL" not in out


def test_tables_mclc():
    code, out, _ = _run("tables", "--suite", "mclc")
    assert code == 0
    assert "PASS mclc: 15/15 stable, 15/15 distinct" in out


def test_tables_corrupt_golden_names_row(tmp_path):
    data = bytearray(suite_path("mclc").read_bytes())
    i = data.index(b'"Eq"') + 1
    data[i] ^= 0x04
    bad = tmp_path / "mclc.json"
    bad.write_bytes(bytes(data))
    code, out, _ = _run("tables", "--suite", "mclc", "--golden", str(bad))
    assert code == 1
    assert "FAIL" in out and "row 6" in out


@pytest.mark.slow
def test_tables_mcvc():
    code, out, _ = _run("tables", "--suite", "mcvc")
    assert code == 0
    assert "56/56 stable, 56/56 distinct" in out
