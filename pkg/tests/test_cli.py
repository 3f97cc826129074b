import json
import subprocess
import sys

import pytest

from skewdet.cli import main

DIAG = {"ring": {"field": "F_5"}, "entries": [["x^2 + 1", "0"], ["0", "x"]]}
TWISTED = {"ring": {"field": "Q(x)", "delta": "derivative", "indeterminate": "D"},
           "entries": [["D", "-1"], ["1", "D"]]}


def run(capsys, *argv):
    code = main([*argv, "--no-timing"])
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["exit_code"] == code
    assert "timing" not in report
    return code, report, out


def test_degdet(capsys):
    code, report, _ = run(capsys, "degdet", "--json", json.dumps(DIAG))
    assert code == 0 and report["result"]["degdet"] == 3


def test_degdet_with_oracles(capsys):
    code, report, _ = run(capsys, "degdet", "--oracle", "--json", json.dumps(DIAG))
    assert code == 0 and report["oracles"]["agree"]
    assert report["oracles"]["commutative"]["value"] == 3
    code, report, _ = run(capsys, "degdet", "--oracle", "--json", json.dumps(TWISTED))
    assert code == 0 and report["oracles"]["quotient_dim"]["value"] == 2
    assert "commutative" not in report["oracles"]


def test_echelon_and_invert(capsys):
    code, report, _ = run(capsys, "echelon", "--json", json.dumps(TWISTED))
    assert code == 0 and report["result"]["degdet"] == 2 and report["result"]["ops_log"]
    unit = {"ring": {"field": "F_5"}, "entries": [["1", "x"], ["0", "1"]]}
    code, report, _ = run(capsys, "invert", "--json", json.dumps(unit))
    assert code == 0 and report["result"]["inverse"] == [["1", "4*x"], ["0", "1"]]


def test_not_a_unit_is_a_domain_error(capsys):
    code, report, _ = run(capsys, "invert", "--json", json.dumps(DIAG))
    assert code == 3 and report["error"]["kind"] == "NotAUnit"


def test_malformed_entry_reports_position(capsys):
    bad = {"ring": {"field": "F_5"}, "entries": [["x", "x +* 1"], ["0", "1"]]}
    code, report, _ = run(capsys, "degdet", "--json", json.dumps(bad))
    assert code == 2
    assert report["error"]["entry"] == [0, 1] and report["error"]["position"] == 3


def test_bad_json_and_missing_input(capsys, tmp_path):
    code, report, _ = run(capsys, "degdet", "--json", "{nope")
    assert code == 2
    code, report, _ = run(capsys, "degdet")
    assert code == 2
    code, report, _ = run(capsys, "degdet", "--input", str(tmp_path / "missing.json"))
    assert code == 2


def test_input_and_output_files(capsys, tmp_path):
    src = tmp_path / "in.json"
    src.write_text(json.dumps(DIAG))
    dst = tmp_path / "out.json"
    assert main(["degdet", "--input", str(src), "--output", str(dst)]) == 0
    assert capsys.readouterr().out == ""
    report = json.loads(dst.read_text())
    assert report["result"]["degdet"] == 3 and report["timing"]["seconds"] >= 0


def test_kernel_and_tmodule_rank(capsys):
    ring = {"field": {"kind": "rational_function", "p": 3, "variable": "theta"},
            "alpha": "frobenius", "indeterminate": "tau"}
    phi = {"ring": ring, "entries": [["theta + tau"]]}
    code, report, _ = run(capsys, "kernel-rank", "--json", json.dumps(phi))
    assert code == 0 and report["result"]["rank"] == "3^1"
    code, report, _ = run(capsys, "tmodule-rank", "--json", json.dumps({"phi": phi}))
    assert code == 0 and report["result"]["r"] == 1 and report["result"]["consistent"]
    code, report, _ = run(capsys, "tmodule-rank", "--json", json.dumps({"phi": phi, "samples": 3}))
    assert code == 2


def test_ode_dim(capsys):
    spec = {"field": "Q(x)", "twist": "derivative", "operator": "D^2 + 1"}
    code, report, _ = run(capsys, "ode-dim", "--json", json.dumps(spec))
    assert code == 0 and report["result"]["dimension"] == 2
    spec = {"field": "Q(x)", "twist": {"q_shift": "2"}, "n": 1,
            "coefficients": [[["x"]], [["1"]], [["1"]]]}
    code, report, _ = run(capsys, "ode-dim", "--json", json.dumps(spec))
    assert code == 0 and report["result"]["dimension"] == 2


def test_selftest_small_caps(capsys):
    code, report, _ = run(capsys, "selftest", "--max-n", "1", "--max-deg", "1")
    assert code == 0 and report["result"]["passed"]


def test_selftest_is_byte_identical(capsys):
    _, _, first = run(capsys, "selftest", "--seed", "7")
    _, _, second = run(capsys, "selftest", "--seed", "7")
    assert first == second


def test_injected_fault_exits_five(capsys):
    code, report, _ = run(capsys, "selftest", "--inject-fault", "broken-twist")
    assert code == 5
    ce = report["result"]["counterexample"]
    assert ce["suite"] == "leibniz" and "leibniz" in report["error"]["message"]
    assert ce["minimized"] is not None


def test_bad_caps_and_unknown_command(capsys):
    assert main(["selftest", "--max-n", "0"]) == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skewdet", "degdet", "--no-timing",
                           "--json", json.dumps(DIAG)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["degdet"] == 3
