import json
import subprocess
import sys

import pytest

from polycenters import analysis
from polycenters.analysis import AnalysisOptions, analyze
from polycenters.cli import EXIT_AUDIT, EXIT_INPUT, EXIT_OK, main
from polycenters.constructors import paper_example
from polycenters.critical_points import PlanarField
from polycenters.errors import LineAtInfinityDegenerate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- analysis -----------------------------------------------------------------------------------

def test_analyze_ex1():
    rep = analyze(paper_example("ex1"))
    assert len(rep.centers) == 4
    assert str(rep.configuration) == "(1;1;1;1)"
    assert rep.kolmogorov and not rep.hk
    assert rep.first_integral_verified
    assert rep.audits_pass
    assert rep.center_bound_ok is None


def test_analyze_hamiltonian_bound():
    rep = analyze(paper_example("hk_circle"))
    assert rep.hk and rep.hamiltonian is not None
    assert len(rep.centers) == 4
    assert rep.center_bound_ok


def test_analyze_common_factor_warns():
    rep = analyze(PlanarField.parse("-y*(x - 3)", "x*(x - 3)"))
    assert rep.common_factor.total_degree == 1
    assert any("share the factor" in w for w in rep.warnings)
    assert rep.reduced.degree == 1


def test_analyze_degenerate_line_at_infinity():
    with pytest.raises(LineAtInfinityDegenerate):
        analyze(PlanarField.parse("x*(x - y)", "y*(x - y) + 1"))


def test_analyze_bound_option():
    rep = analyze(PlanarField.parse("-(y - 50)", "x - 50"), AnalysisOptions(bound=10))
    assert rep.indices.finite == []


def test_report_json_is_serialisable_and_stable():
    rep = analyze(paper_example("ex2"))
    doc = rep.to_json()
    assert doc["schema"] == analysis.SCHEMA
    assert json.loads(json.dumps(doc)) == doc
    assert doc["audits"]["poincare_hopf"] == {"sum_finite": 3, "sum_infinite": -4, "pass": True}
    assert doc["audits"]["center_bound"]["pass"] is None
    assert json.dumps(doc, sort_keys=True) == json.dumps(analyze(paper_example("ex2")).to_json(), sort_keys=True)


# -- cli ----------------------------------------------------------------------------------------

def test_cli_analyze_summary(capsys):
    code, out, _ = run(capsys, "analyze", "--example", "ex1", "--summary")
    assert code == EXIT_OK
    assert "4 center" in out and "(1;1;1;1)" in out


def test_cli_analyze_json_default(capsys):
    code, out, _ = run(capsys, "analyze", "--dx", "-y", "--dy", "x")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert [p["kind"] for p in doc["finite_points"]] == ["center"]


def test_cli_analyze_is_deterministic(capsys):
    _, a, _ = run(capsys, "analyze", "--example", "ex3")
    _, b, _ = run(capsys, "analyze", "--example", "ex3")
    assert a == b


def test_cli_analyze_from_file(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"dx": "x*(1 - x^2 - 3*y^2)", "dy": "2*y*(-1 + 2*x^2 + y^2)"}))
    code, out, _ = run(capsys, "analyze", "--file", str(p), "--summary")
    assert code == EXIT_OK and "(1;1;1;1)" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--dx", "x +* y", "--dy", "x"],
        ["analyze", "--example", "nope"],
        ["analyze", "--dx", "x"],
        ["analyze", "--example", "ex1", "--dx", "x", "--dy", "y"],
        ["analyze", "--file", "/nonexistent/f.json"],
        ["analyze", "--dx", "x*(x - y)", "--dy", "y*(x - y) + 1"],
        ["construct", "extremal", "1", "0"],
        ["verify-paper", "--criterion", "42"],
    ],
)
def test_cli_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert "polycenters" in err


def test_cli_parse_error_reports_column(capsys):
    code, _, err = run(capsys, "analyze", "--dx", "x +* y", "--dy", "x")
    assert code == EXIT_INPUT and "column 4" in err


def test_cli_usage_error_exits_1():
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--no-such-flag"])
    assert exc.value.code == EXIT_INPUT


def test_cli_audit_failure_exits_2(capsys, monkeypatch):
    monkeypatch.setattr(analysis.AnalysisReport, "audits_pass", property(lambda self: False))
    code, _, _ = run(capsys, "analyze", "--example", "ex1")
    assert code == EXIT_AUDIT


def test_cli_construct(capsys):
    code, out, _ = run(capsys, "construct", "extremal", "3", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert {"dx", "dy", "H"} <= set(doc)
    code, out, _ = run(capsys, "construct", "product", "3", "1")
    assert json.loads(out)["dx"]


def test_cli_portrait(tmp_path, capsys):
    out = tmp_path / "rot.svg"
    code, stdout, _ = run(capsys, "portrait", "--dx", "-y", "--dy", "x", "-o", str(out), "--size", "200")
    assert code == EXIT_OK
    svg = out.read_text()
    assert svg.startswith("<?xml") and 'width="420"' in svg


def test_cli_verify_subset_and_out(tmp_path, capsys):
    code, out, _ = run(capsys, "verify-paper", "--criterion", "examples", "--criterion", "9", "--out", str(tmp_path))
    assert code == EXIT_OK
    assert "criterion 3 (examples): PASS" in out
    doc = json.loads((tmp_path / "verify.json").read_text())
    assert [c["criterion"] for c in doc["criteria"]] == [3, 9]
    assert (tmp_path / "summary.tsv").read_text().count("PASS") == 2
    for name in ("hk_circle.svg", "normalized-3-2.svg"):
        assert (tmp_path / name).read_text().startswith("<?xml")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polycenters", "analyze", "--example", "hk_circle", "--summary"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert "4 center" in proc.stdout
