import json

import pytest

from ruminalg.cli import main
from ruminalg.finite import heisenberg_ce_algebra


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "pi(dx1^dy1)", "--n", "1")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(capsys, "eval", "gamma(dx1^dy1)")
    assert code == 0 and out.strip() == "theta"
    code, out, _ = run(capsys, "eval", "m3(dx1; dy1; dx1)")
    assert code == 0 and out.strip() == "2 theta^dx1"
    code, out, _ = run(capsys, "eval", "dz", "--n", "2")
    assert code == 0 and out.strip() == "theta + (y1) dx1 + (y2) dx2"


def test_eval_output_refeeds(capsys):
    code, out, _ = run(capsys, "eval", "f2(dx1; dy1)")
    assert code == 0
    # leading '-' needs the usual argparse '--' separator
    code2, out2, _ = run(capsys, "eval", "--", out.strip())
    assert code2 == 0 and out2 == out


def test_eval_syntax_error_exit_2(capsys):
    code, _, err = run(capsys, "eval", "theta ^")
    assert code == 2 and "syntax error" in err


def test_eval_domain_error_exit_1(capsys):
    code, _, err = run(capsys, "eval", "m2(dx1^dy1; dx1)")
    assert code == 1 and "m2" in err


def test_verify_pass_and_json_determinism(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "dsa-lemma", "--n", "1", "--trials", "20", "--seed", "7", "--json"]
    code, out, _ = run(capsys, *args, str(p1))
    assert code == 0 and "PASS" in out
    code, _, _ = run(capsys, *args, str(p2))
    assert code == 0
    # byte-identical apart from the timing field
    strip = lambda text: "\n".join(
        line for line in text.splitlines() if "wallTimeSeconds" not in line
    )
    assert strip(p1.read_text()) == strip(p2.read_text())
    d1 = json.loads(p1.read_text())
    assert d1["suite"] == "dsa-lemma" and d1["passed"] is True
    assert set(d1) == {
        "suite", "n", "trials", "seed", "maxPolyDegree", "passed", "failures",
        "version", "wallTimeSeconds",
    }


def test_verify_unknown_suite_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_verify_missing_suite_exit_2(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2 and "suite" in err


def test_verify_flag_form(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lefschetz-iso", "--n", "2")
    assert code == 0 and "PASS" in out


def test_basis_listing(capsys):
    code, out, _ = run(capsys, "basis", "--n", "1", "--degree", "2")
    assert code == 0
    assert out.splitlines() == ["theta^dx1", "theta^dy1", "dx1^dy1"]
    code, out, _ = run(capsys, "basis", "--n", "1", "--degree", "2", "--vertical")
    assert out.splitlines() == ["theta^dx1", "theta^dy1"]


def test_model_command(capsys):
    code, out, _ = run(capsys, "model", "--n", "2")
    assert code == 0
    assert "theta = dz - y1*dx1 - y2*dx2" in out
    assert "dtheta = dx1^dy1 + dx2^dy2" in out


def test_cohomology_builtin(capsys):
    code, out, _ = run(capsys, "cohomology", "--builtin", "ce")
    assert code == 0 and "betti (1, 2, 2, 1)" in out
    code, out, _ = run(capsys, "cohomology", "--builtin", "rumin")
    assert code == 0 and "betti (1, 2, 2, 1)" in out


def test_cohomology_from_file(capsys, tmp_path):
    path = tmp_path / "ce.alg"
    path.write_text(heisenberg_ce_algebra().dumps())
    code, out, _ = run(capsys, "cohomology", str(path))
    assert code == 0 and "betti (1, 2, 2, 1)" in out


def test_cohomology_dump_round_trips(capsys, tmp_path):
    code, out, _ = run(capsys, "cohomology", "--builtin", "ce", "--dump")
    assert code == 0
    path = tmp_path / "dumped.alg"
    path.write_text(out)
    code, out2, _ = run(capsys, "cohomology", str(path))
    assert code == 0 and "betti (1, 2, 2, 1)" in out2


def test_cohomology_arg_validation(capsys, tmp_path):
    code, _, err = run(capsys, "cohomology")
    assert code == 2
    code, _, err = run(capsys, "cohomology", str(tmp_path / "missing.alg"))
    assert code == 2
    bad = tmp_path / "bad.alg"
    bad.write_text("basis u 0\nbasis v 1\nd u v 1\nd v ???\n")
    code, _, err = run(capsys, "cohomology", str(bad))
    assert code == 1 and "line 4" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "ruminalg" in out and "kernel:" in out
