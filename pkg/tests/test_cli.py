from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fermat237.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.splitlines(), out.err


def test_covariants(capsys):
    code, lines, _ = run(capsys, "covariants", "C5")
    assert code == 0
    assert lines[0] == "psi0 -24"
    assert [ln.split()[0] for ln in lines] == ["psi0", "psi6", "psi14", "psi21"]


def test_j_and_recover(capsys):
    assert run(capsys, "j", "C8", "0", "0", "1")[1] == ["-13824"]
    assert run(capsys, "j", "C1", "1", "0", "0")[1] == ["inf"]
    assert run(capsys, "recover", "C7", "0", "1", "1")[1] == ["21063928 -76271 17"]
    assert run(capsys, "recover", "C5", "1", "1", "1")[1][0].startswith("- p=")


def test_json_lines(capsys):
    code, lines, _ = run(capsys, "--format", "json", "recover", "C10", "1", "0", "0")
    assert code == 0
    assert json.loads(lines[0]) == {"solution": [71, -17, 2]}


def test_localtest(capsys):
    code, lines, _ = run(capsys, "localtest", "C5", "--p", "3")
    assert code == 0
    assert lines[-1] == "3 passes"
    assert all(ln.endswith("admissible") for ln in lines[:-1])


def test_localtest_depth_limit_exit_code(capsys):
    code, lines, _ = run(capsys, "localtest", "C5", "--p", "3", "--max-depth", "0")
    assert code == 4
    assert lines[-1] == "3 inconclusive"


def test_depth_env_default(capsys, monkeypatch):
    monkeypatch.setenv("FERMAT237_MAX_DEPTH", "0")
    assert run(capsys, "localtest", "C5", "--p", "3")[0] == 4


def test_search(capsys):
    code, lines, _ = run(capsys, "search", "C5", "--bound", "10")
    assert lines == ["0:0:1", "0:1:0", "1:0:0", "1:1:1"]
    assert run(capsys, "search", "C5", "--bound", "10", "--subset")[1] == []


def test_count_and_order(capsys):
    assert run(capsys, "count", "C2", "--p", "5", "--k", "1")[1] == ["C2 5 1 6"]
    assert run(capsys, "jacobian-order", "C2", "--p", "5")[1][0].split()[-1] == "126"


def test_component_group(capsys, tmp_path):
    assert run(capsys, "component-group", "c5_p3")[1] == ["Z/7"]
    f = tmp_path / "i3.mat"
    f.write_text("3\n1 1 1\n-2 1 1\n1 -2 1\n1 1 -2\n")
    assert run(capsys, "component-group", str(f))[1] == ["Z/3"]


def test_sieve(capsys):
    lines = run(capsys, "sieve", "--c5-chain")[1]
    assert lines[1] == "after 23: mod 4 4 4: 4 survivors"
    assert lines[-1] == "after 13: mod 28 28 28: 0 survivors"
    lines = run(capsys, "sieve", "sieve_p23")[1]
    assert lines[0] == "result: mod 4 4 4: 16 survivors"


def test_septic_and_twists(capsys):
    assert run(capsys, "septic", "1", "3", "4", "--bound", "10")[1] == ["1:1:-1"]
    lines = run(capsys, "twists", "case1")[1]
    assert "1 1 1" in lines
    code, lines, _ = run(capsys, "twists", "from-curve", "0", "1")
    assert code == 0 and lines == ["7*x^3*z + 3*x^2*y^2 - 6*x*y*z^2 + 2*y^3*z - 4*z^4"]


def test_verify_theorem(capsys):
    lines = run(capsys, "verify-theorem")[1]
    assert len(lines) == 16
    assert "2213459 1414 65" in lines and "-21063928 -76271 17" in lines


@pytest.mark.parametrize(
    "argv",
    [["covariants", "x^4 +"], ["localtest", "C5", "--p", "5"], ["count", "C2", "--bogus"], []],
)
def test_parse_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_math_error_exit_3(capsys):
    code, _, err = run(capsys, "recover", "C5", "1", "2", "3")
    assert code == 3 and "not on the curve" in err
    assert run(capsys, "jacobian-order", "C5", "--p", "3")[0] == 3


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "fermat237", "j", "C8", "0", "0", "1"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "-13824"


def test_spec_cli_examples(capsys):
    assert run(capsys, "recover", "C8", "0", "0", "1")[1] == ["3 -2 1"]
    assert run(capsys, "component-group", "fixtures/c5_p3.mat")[1] == ["Z/7"]
