import json

import pytest

from schemedual.cli import main
from schemedual.report import load_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_family(capsys):
    code, out, _ = run(capsys, "verify", "--family", "hamming", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert data["valid"] and data["k"] == [1, 3, 3, 1]


def test_gen_then_analyze_file(capsys, tmp_path):
    path = tmp_path / "h3.scm"
    assert main(["gen", "--family", "hamming", "--n", "3", "-o", str(path)]) == 0
    code, from_file, _ = run(capsys, "analyze", str(path))
    assert code == 0
    code, from_family, _ = run(capsys, "analyze", "--family", "hamming", "--n", "3")
    assert from_file == from_family
    rep = load_report(from_file)
    assert rep["format"] == "schemedual-report-v1"
    assert rep["polynomial"]["aw_max_residual"] == "0"
    assert rep["polynomial"]["u_reproduces_P"] and rep["polynomial"]["ustar_reproduces_Q"]
    assert rep["duality"]["numerically_self_dual"]


def test_gen_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "--family", "cycle", "--n", "5")
    assert code == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "5 2" and lines[2] == "1 0 1 2 2"


def test_analyze_is_deterministic(capsys):
    outs = {run(capsys, "--mode", "approx", "analyze", "--family", "cycle", "--n", "7")[1] for _ in range(2)}
    assert len(outs) == 1


def test_json_flag_writes_copy(capsys, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "verify", "--family", "cycle", "--n", "6", "--json", str(dest))
    assert code == 0 and dest.read_text() == out


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "cycle", "--n", "5", "--mode", "approx")
    assert code == 0 and json.loads(out)["mode"] == "approx"


def test_selfdual_sigma_and_enumerate(capsys):
    code, out, _ = run(capsys, "selfdual", "--family", "binary-group", "--m", "2", "--enumerate")
    assert code == 0
    assert json.loads(out)["summary"] == {"orderings": 6, "fsd": 4, "nsd": 6, "nsd_not_fsd": 2}
    code, out, _ = run(capsys, "selfdual", "--family", "hamming", "--n", "3", "--sigma", "0,2,1,3")
    rep = json.loads(out)["reports"][0]
    assert code == 0 and not rep["numerically_self_dual"]


def test_group_scheme(capsys, tmp_path):
    path = tmp_path / "x3.scm"
    code, out, _ = run(capsys, "group-scheme", "--m", "3", "--emit-scm", str(path))
    data = json.loads(out)
    assert code == 0 and data["kronecker_associates_ok"] and data["spectral_matches_closed_form"]
    assert main(["verify", str(path)]) == 0


def test_gl2_classify_single_matrix(capsys):
    code, out, _ = run(capsys, "gl2-classify", "--S", "10,11")
    data = json.loads(out)
    assert code == 0 and data["nsd"] and not data["fsd"] and data["sigma"] == [0, 1, 3, 2]


def test_poly_check(capsys):
    code, out, _ = run(capsys, "poly-check", "--family", "hamming", "--n", "4")
    data = json.loads(out)
    assert code == 0 and data["main2_verified"] and data["orderings_checked"] == 24
    code, out, _ = run(capsys, "poly-check", "--family", "binary-group", "--m", "2")
    assert code == 0 and not json.loads(out)["p_polynomial"]


@pytest.mark.parametrize("argv, code", [
    (["verify"], 1),
    (["nonsense"], 1),
    (["verify", "--family", "cycle", "--n", "2"], 1),
    (["gl2-classify", "--S", "11,11"], 1),
    (["gl2-classify", "--m", "5"], 1),
    (["selfdual", "--family", "hamming", "--n", "2", "--sigma", "0,1"], 1),
    (["analyze", "--family", "cycle", "--n", "5"], 3),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code and out == ""
    if code == 3:
        assert "irrational spectrum" in err


def test_axiom_violation_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.scm"
    path.write_text("# perturbed\n4 3\n0 2 2 3\n2 0 3 2\n2 3 0 1\n3 2 1 0\n")
    code, out, err = run(capsys, "verify", str(path))
    assert code == 2 and out == ""
    assert '"witnesses"' in err


def test_missing_file_is_a_parse_error(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", str(tmp_path / "absent.scm"))
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["--family", "hamming", "--n", "2", "--q", "3"],
    ["--family", "cycle", "--n", "6"],
    ["--family", "binary-group", "--m", "3"],
    ["--family", "cycle", "--n", "7", "--mode", "approx"],
], ids=["H23", "C6", "X3", "C7-approx"])
def test_written_fixture_gives_identical_report(capsys, tmp_path, argv):
    path = tmp_path / "f.scm"
    family_args = [a for a in argv if a not in ("--mode", "approx")]
    assert main(["gen", *family_args, "-o", str(path)]) == 0
    extra = ["--mode", "approx"] if "approx" in argv else []
    _, direct, _ = run(capsys, "analyze", *argv)
    _, reread, _ = run(capsys, "analyze", str(path), *extra)
    assert direct == reread and json.loads(direct)["format"] == "schemedual-report-v1"
