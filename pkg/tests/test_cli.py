import json
import math

import pytest

from harmclass.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(out: str) -> dict:
    data = json.loads(out)
    assert {"artifact", "params", "certificates", "construction"} <= set(data)
    return data


@pytest.fixture
def theta_file(tmp_path, capsys):
    path = tmp_path / "theta.json"
    code, out, _ = run(capsys, "construct", "theta", "--alpha", "0", "--beta", "1", "-o", str(path))
    assert code == 0
    return path


def write_map(tmp_path, h, g=None, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"h": h, "g": g or [[0, 0]] * len(h)}))
    return path


def test_construct_theta(theta_file):
    data = json.loads(theta_file.read_text())
    assert data == {"h": [[0.0, 0.0], [1.0, 0.0], [0.25, 0.0]], "g": [[0.0, 0.0], [0.0, 0.0], [-0.25, 0.0]]}


def test_check_theta_passes(capsys, theta_file):
    code, out, _ = run(capsys, "check", str(theta_file), "--alpha", "0", "--beta", "1")
    data = report(out)
    assert code == 0
    certs = {c["method"]: c for c in data["certificates"]}
    assert certs["coefficient_sum"]["margin"] == 0.0
    assert set(certs) == {"coefficient_sum", "grid_sup", "sense_preserving", "derivative_bound", "injectivity"}
    assert data["regime"]["close_to_convex"] is True


def test_check_identity_margin_beta(capsys, tmp_path):
    path = write_map(tmp_path, [[0, 0], [1, 0]])
    code, out, _ = run(capsys, "check", str(path), "--alpha", "0.3", "--beta", "0.7")
    certs = {c["method"]: c for c in report(out)["certificates"]}
    assert code == 0 and certs["coefficient_sum"]["margin"] == 0.7 and certs["grid_sup"]["margin"] == 0.7


def test_check_outsider_exit_1(capsys, tmp_path):
    path = write_map(tmp_path, [[0, 0], [1, 0], [1, 0]])
    code, out, _ = run(capsys, "check", str(path), "--alpha", "0", "--beta", "1")
    certs = {c["method"]: c for c in report(out)["certificates"]}
    assert code == 1 and certs["grid_sup"]["margin"] == pytest.approx(1 - 2 * 0.999, abs=1e-12)
    assert "derivative_bound" not in certs


def test_check_grid_flags(capsys, theta_file):
    code, out, _ = run(capsys, "check", str(theta_file), "--alpha", "0", "--beta", "1",
                       "--grid-radii", "0.5,0.9", "--grid-angles", "64", "--lambda-count", "8",
                       "--tolerance", "1e-6")
    sup = next(c for c in report(out)["certificates"] if c["method"] == "grid_sup")
    assert code == 0 and sup["margin"] == pytest.approx(0.1, abs=1e-12)
    assert sup["grid"] == {"radii": [0.5, 0.9], "angles_per_circle": 64} and sup["tolerance"] == 1e-6


def test_check_outside_h0_still_reports(capsys, tmp_path):
    path = write_map(tmp_path, [[0, 0], [1, 0], [0, 0]], [[0, 0], [0.1, 0], [0, 0]])
    code, out, _ = run(capsys, "check", str(path), "--alpha", "0", "--beta", "1")
    data = report(out)
    assert code in (0, 1) and data["notes"]
    assert "coefficient_sum" not in {c["method"] for c in data["certificates"]}


@pytest.mark.parametrize("content", ["not json", "[]", '{"h": "x"}', '{"h": [[0,0],[2,0]]}', '{"h": [[0,0],[1,0]], "g": [[1,0]]}'])
def test_check_malformed_map_exit_2(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, out, err = run(capsys, "check", str(path), "--alpha", "0", "--beta", "1")
    assert code == 2 and out == "" and err.startswith("harmclass: error:")


@pytest.mark.parametrize("argv", [
    ["check", "missing.json", "--alpha", "0", "--beta", "1"],
    ["check", "x.json", "--alpha", "-1", "--beta", "1"],
    ["check", "x.json", "--alpha", "0"],
    ["frobnicate"],
    ["construct", "extremal", "coeff_analytic", "--n", "1", "--alpha", "0", "--beta", "1", "-o", "x.json"],
    ["construct", "hyper", "f1", "--a", "1", "--b", "1", "--c", "-2", "-o", "x.json"],
    ["construct", "poly", "F1", "--m", "0", "--c", "2", "-o", "x.json"],
    ["envelope", "--alpha", "0", "--beta", "3"],
    ["envelope", "--alpha", "0", "--beta", "1", "--radii", "a,b"],
])
def test_input_errors_exit_2(capsys, tmp_path, monkeypatch, argv):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "x.json").write_text('{"h": [[0,0],[1,0]]}')
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_construct_poly_and_extremal(capsys, tmp_path):
    out_path = tmp_path / "p.json"
    code, out, _ = run(capsys, "construct", "poly", "F1", "--m", "1", "--c", "2", "-o", str(out_path))
    assert code == 0 and json.loads(out_path.read_text())["g"] == [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.5, 0.0]]
    assert report(out)["spec"]["kind"] == "poly_F1"
    code, _, _ = run(capsys, "construct", "extremal", "coeff_analytic", "--n", "2", "--alpha", "0", "--beta", "1",
                     "-o", str(out_path))
    assert code == 0 and json.loads(out_path.read_text())["h"] == [[0.0, 0.0], [1.0, 0.0], [0.5, 0.0]]


def test_construct_hyper_with_condition(capsys, tmp_path):
    out_path = tmp_path / "h.json"
    code, out, _ = run(capsys, "construct", "hyper", "f1", "--a", "-1", "--b", "-1", "--c", "1",
                       "--alpha", "0", "--beta", "8", "-o", str(out_path))
    data = report(out)
    assert code == 0
    assert data["construction"]["margin"] == 0.0 and data["construction"]["coefficient_margin_crosscheck"] == 0.0
    assert data["certificates"][0]["margin"] == 0.0


def test_construct_failing_member_exit_1(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "hyper", "f1", "--a", "-1", "--b", "-1", "--c", "1",
                       "--alpha", "0", "--beta", "4", "-o", str(tmp_path / "h.json"))
    assert code == 1 and report(out)["construction"]["margin"] < 0


def test_construct_condition_error_is_reported(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "hyper", "f2", "--a", "0.5", "--b", "0.5", "--c", "4",
                       "--alpha", "2", "--beta", "1.5", "-o", str(tmp_path / "h.json"))
    data = report(out)
    assert data["construction"] is None and "beta > alpha" in data["spec"]["condition_error"]


def test_verify_params(capsys):
    code, out, _ = run(capsys, "verify", "params", "--seed", "3")
    summary = report(out)["verify"]
    assert code == 0 and summary["passed"]
    names = {p["name"]: p for p in summary["results"][0]["properties"]}
    assert names["convex_breakpoint_continuity"]["failures"] == 0


def test_verify_specfun_reports_literal_gap(capsys):
    code, out, _ = run(capsys, "verify", "specfun", "--seed", "1")
    rep = report(out)["verify"]["results"][0]["reports"]["lemma_c_literal_vs_corrected"]
    assert code == 0 and rep["literal_gap"] == pytest.approx(10 / 3, abs=1e-8)


def test_render_outputs(capsys, tmp_path, theta_file):
    svg = tmp_path / "t.svg"
    code, out, _ = run(capsys, "render", str(theta_file), "-o", str(svg))
    data = report(out)
    assert code == 0 and svg.exists() and data["boundary_length"] < 4 * math.pi
    code, _, err = run(capsys, "render", str(theta_file), "-o", str(tmp_path / "no" / "dir.svg"))
    assert code == 2 and "cannot write" in err
    code, _, _ = run(capsys, "render", str(theta_file), "--samples", "8", "-o", str(svg))
    assert code == 2


def test_envelope_csv(capsys):
    code, out, _ = run(capsys, "envelope", "--alpha", "0", "--beta", "1", "--radii", "0,0.5")
    assert code == 0 and out.splitlines() == ["r,lower,upper", "0.0,0.0,0.0", "0.5,0.375,0.625"]


def test_numeric_output_roundtrips(capsys, tmp_path):
    path = write_map(tmp_path, [[0, 0], [1, 0], [1 / 3, 1 / 7]])
    code, out, _ = run(capsys, "check", str(path), "--alpha", "0.1", "--beta", "3")
    data = report(out)
    from harmclass import membership
    from harmclass.params import ClassParams
    from harmclass.series import map_from_json
    f = map_from_json(json.loads(path.read_text()))
    margin = membership.coefficient_margin(f, ClassParams(0.1, 3)).margin
    assert data["certificates"][0]["margin"] == margin
