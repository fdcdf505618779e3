import json

import pytest

from modk0 import checks
from modk0.checks import GOLDEN_WORKSPACE, SuiteResult
from modk0.cli import main, parse_workspace, CliError


@pytest.fixture
def workspace(tmp_path):
    data = json.loads(json.dumps(GOLDEN_WORKSPACE))
    data["exprs"]["axes_minus_origin"] = "(xaxis | yaxis) \\ origin"
    data["exprs"]["zero"] = "{0}"
    path = tmp_path / "ws.json"
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_k0_command(capsys):
    code, out, _ = run(capsys, "k0", "--backend", "zp:5")
    assert code == 0 and out.splitlines()[0] == "Z[X]/<4X>"
    assert run(capsys, "k0")[1].splitlines()[0] == "Z[X]"
    assert run(capsys, "k0", "--backend", "integer-z")[1].splitlines()[0] == "Z"


def test_ev_lambda_decompose(capsys, workspace):
    assert run(capsys, "ev", "xaxis", "-w", workspace)[1] == "X\n"
    assert run(capsys, "ev", "cross", "-w", workspace)[1] == "2X - 1\n"
    assert run(capsys, "ev", "zero", "-w", workspace)[1] == "1\n"
    assert run(capsys, "lambda", "axes_minus_origin", "-w", workspace)[1] == "2 (exact)\n"
    code, out, _ = run(capsys, "decompose", "axes_minus_origin", "-w", workspace)
    assert code == 0 and "height: 1" in out


def test_minimal_workspace(tmp_path, capsys):
    path = tmp_path / "line.json"
    path.write_text(json.dumps({"backend": "affine-q", "sets": {"l": {"n": 2, "eq": [[1, 1, 3]]}}}))
    assert run(capsys, "ev", "l", "-w", str(path))[1] == "X\n"


def test_homology_command(tmp_path, capsys):
    path = tmp_path / "path.cplx"
    path.write_text("1,2\n2,3\n")
    code, out, _ = run(capsys, "homology", str(path))
    assert code == 0 and out == "H0=Z\n"


def test_json_output(tmp_path, capsys, workspace):
    out_path = tmp_path / "out.json"
    run(capsys, "ev", "cross", "-w", workspace, "--json", str(out_path))
    payload = json.loads(out_path.read_text())
    assert payload["command"] == "ev" and payload["result"]["value"] == "2X - 1"


def test_check_is_deterministic(capsys):
    first = run(capsys, "check", "t1", "--seed", "7", "--cases", "10")
    second = run(capsys, "check", "t1", "--seed", "7", "--cases", "10")
    assert first == second
    assert first[0] == 0 and "seed: 7" in first[1] and "t1: PASS 10/10" in first[1]


def test_failing_suite_prints_instance_and_exits_one(capsys, monkeypatch):
    def broken(rng, cases, budget):
        res = SuiteResult("broken", cases=1)
        res.failures.append({"instance": "1,2\n", "reason": "deliberate"})
        return res
    monkeypatch.setitem(checks.SUITES, "broken", broken)
    code, out, _ = run(capsys, "check", "broken")
    assert code == 1
    assert "broken: FAIL 0/1" in out and "failing instance: 1,2" in out


def test_errors(tmp_path, capsys, workspace):
    bad = tmp_path / "bad.json"
    bad.write_text('{"sets": {\n  "a": }')
    code, _, err = run(capsys, "ev", "a", "-w", str(bad))
    assert code == 2 and "line 2" in err
    bad.write_text(json.dumps({"exprs": {"a": "b |"}}))
    code, _, err = run(capsys, "ev", "a", "-w", str(bad))
    assert code == 2 and "column" in err
    assert run(capsys, "ev", "nothing", "-w", workspace)[0] == 2
    assert run(capsys, "check", "nonsense")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "ev", "cross", "-w", workspace, "--backend", "integer-z")[0] == 2
    assert run(capsys, "homology", str(tmp_path / "missing.cplx"))[0] == 2
    with pytest.raises(CliError):
        parse_workspace(str(tmp_path / "missing.json"))


def test_suite_configuration_from_workspace(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"backend": "affine-q", "suite": {"seed": 3, "cases": 5}}))
    code, out, _ = run(capsys, "check", "p1", "-w", str(path))
    assert code == 0 and "seed: 3" in out and "p1: PASS 5/5" in out
