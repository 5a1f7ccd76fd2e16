"""Command-line interface: subcommands, exit codes, JSON output."""

import json

from qmod.cli import run, verify_registry


def test_expand_form(capsys):
    assert run(["expand", "--form", "F_EX3", "--prec", "16"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "q^3 - 2*q^7 - q^11 + 2*q^15 + O(q^16)"


def test_expand_expr(capsys):
    assert run(["expand", "--expr", "eta(8)*eta(16)*theta(2)", "--prec", "12"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "q + 2*q^3 + q^9 - 2*q^11 + O(q^12)"


def test_expand_json_is_deterministic(capsys):
    argv = ["expand", "--form", "THETA", "--prec", "5", "--json"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert data == {"prec": 5, "d": 1, "coeffs": ["1", "2", "0", "0", "2"]}


def test_expand_needs_exactly_one_source(capsys):
    assert run(["expand"]) == 2
    assert run(["expand", "--form", "THETA", "--expr", "theta(1)"]) == 2
    assert "error" in capsys.readouterr().err


def test_expand_unknown_form(capsys):
    assert run(["expand", "--form", "NOPE"]) == 2
    assert "unknown form" in capsys.readouterr().err


def test_expand_malformed_expr(capsys):
    assert run(["expand", "--expr", "theta("]) == 2
    assert "error" in capsys.readouterr().err


def test_verify_pass_exit_zero(capsys):
    assert run(["verify", "kronecker", "--bound", "30"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "kronecker" in out


def test_verify_several_checks(capsys):
    code = run(["verify", "jacobi", "thetaeta", "--prec", "32"])
    assert code == 0
    out = capsys.readouterr().out
    assert "jacobi" in out and "thetaeta" in out


def test_verify_all_names_are_registered():
    names = verify_registry()
    assert len(names) == 11
    assert "kronecker" in names and "fourcore" in names


def test_verify_unknown_check(capsys):
    assert run(["verify", "nosuchcheck"]) == 2
    assert "unknown check" in capsys.readouterr().err


def test_verify_bad_bound(capsys):
    assert run(["verify", "kronecker", "--bound", "0"]) == 2
    capsys.readouterr()


def test_verify_json(capsys):
    assert run(["verify", "gauss", "--bound", "40", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["name"] == "gauss"
    assert data[0]["status"] == "pass"


def test_scan(capsys):
    assert run(["scan", "--form", "G1", "--ell", "3", "--bound", "60", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["form"] == "G1" and data["ell"] == 3
    assert data["hits"][0] == 1


def test_scan_composite_ell(capsys):
    assert run(["scan", "--form", "G1", "--ell", "4", "--bound", "20"]) == 2
    capsys.readouterr()


def test_sha_table(capsys):
    assert run(["sha", "--bound", "15", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    byn = {r["N"]: r for r in rows}
    assert byn[1]["S"] == "1"
    assert byn[5]["S"] is None


def test_classnum(capsys):
    assert run(["classnum", "--", "-23"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert run(["classnum", "--", "-12"]) == 2
    capsys.readouterr()


def test_r3(capsys):
    assert run(["r3", "11", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": 11, "r3": 24}
    assert run(["r3", "--", "-1"]) == 2
    capsys.readouterr()


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "series.json"
    code = run(["expand", "--form", "THETA", "--prec", "4", "--json", "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    data = json.loads(target.read_text())
    assert data["prec"] == 4


def test_missing_subcommand_is_usage_error(capsys):
    assert run([]) == 2
    capsys.readouterr()


def test_entry_point_installed():
    import shutil

    exe = shutil.which("qmod")
    assert exe is not None
