from clonoids.golden import dump_suite, load_suite
from clonoids.tables import ERRATA, run_tables, verify_counts, verify_suite, verify_witnesses


def test_counts_report():
    r = verify_counts()
    assert r.ok, r.lines
    assert "PASS counts Sc: 1296 downsets" in r.lines


def test_witness_report():
    assert verify_witnesses().ok


def test_mclc_and_sclc_pass():
    for r in run_tables(["mclc", "sclc"]):
        assert r.ok, [ln for ln in r.lines if ln.startswith("FAIL")]


def _rewrite(tmp_path, name, edit):
    s = load_suite(name)
    rows = [dict(r) for r in s.rows]
    edit(rows)
    p = tmp_path / f"{name}.json"
    p.write_text(dump_suite(s.suite, s.source, s.target, s.columns, rows))
    return p


def test_wrong_stability_column_fails_with_row(tmp_path):
    def edit(rows):
        row = next(r for r in rows if r["K"] == "OX")
        row["C1"] = "Omega"
    path = _rewrite(tmp_path, "mcvc", edit)
    r = verify_suite("mcvc", path, 3, columns=True)
    assert not r.ok
    assert any("('OX'): C1 golden Omega, computed T0" in ln for ln in r.lines)


def test_unstable_row_fails(tmp_path):
    def edit(rows):
        rows[1]["K"] = "A2_11"
    r = verify_suite("mclc", _rewrite(tmp_path, "mclc", edit), 3)
    assert not r.ok
    assert any(ln.startswith("FAIL mclc row 2 ('A2_11')") for ln in r.lines)


def test_missing_row_changes_rebuild_comparison(tmp_path):
    def edit(rows):
        del rows[-1]
    r = verify_suite("sclc", _rewrite(tmp_path, "sclc", edit), 3)
    assert not r.ok
    assert any(ln.startswith("FAIL sclc: golden list equals") for ln in r.lines)


def test_errata_cells_are_listed_with_reasons():
    for (suite, row, col), (printed, fixed, why) in ERRATA.items():
        assert printed != fixed and why
        assert any(r["K"] == row and r[col] == printed for r in load_suite(suite).rows)
