from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from tspace_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_maximality_json(tmp_path, capsys):
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "suite", "maximality", "--q", "3", "--strategy", "exhaustive", "--json", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["schema"] == "tspace-report/1" and data["summary"]["pass"] == 3


def test_certs_written_and_checked(tmp_path, capsys):
    code, _, _ = run(capsys, "suite", "sum", "--q", "3", "--certs", str(tmp_path))
    assert code == 0
    cert = tmp_path / "sum" / "q3-r0-s1.json"
    assert cert.exists()
    code, out, _ = run(capsys, "check-cert", str(cert))
    assert code == 0 and out.startswith("valid")


def test_tampered_cert_rejected(tmp_path, capsys):
    run(capsys, "suite", "sum", "--q", "2", "--certs", str(tmp_path))
    path = tmp_path / "sum" / "q2-r0-s1.json"
    data = json.loads(path.read_text())
    data["witnesses"] = data["witnesses"][:-1]
    path.write_text(json.dumps(data))
    assert run(capsys, "check-cert", str(path))[0] == 1
    path.write_text("{not json")
    assert run(capsys, "check-cert", str(path))[0] == 1


def test_inadmissible_exhaustive_exits_2(capsys):
    assert run(capsys, "suite", "bases", "--q", "7", "--n", "1", "--strategy", "exhaustive")[0] == 2


@pytest.mark.parametrize("argv", [
    ["suite", "bases", "--q", "2", "--bogus"],
    ["nope"],
    [],
    ["suite", "sum", "--q", "2", "--s", "0"],
    ["emit", "--object", "wn", "--q", "6"],
    ["emit", "--object", "b1r", "--q", "3"],
])
def test_usage_errors_exit_64(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 64


def test_emit_canonical(capsys):
    code, out, _ = run(capsys, "emit", "--object", "en", "--q", "3", "--n", "1")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 5 and data["display"][0] == "x + x^3"
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"
    code, out, _ = run(capsys, "emit", "--object", "b1r", "--q", "5", "--r", "2")
    assert json.loads(out)["display"] == ["x^2", "x^14"]


def test_membership(capsys):
    code, out, _ = run(capsys, "membership", "--q", "2", "--gens", "x + x^2", "--target", "x^3",
                       "--expect", "nonmember")
    assert code == 0 and json.loads(out)["verdict"] == "nonmember"
    code, out, _ = run(capsys, "membership", "--q", "2", "--gens", "x + x^2", "--target", "x^3")
    assert code == 1


def test_randomized_never_certifies_absence(capsys):
    code, out, _ = run(capsys, "membership", "--q", "3", "--n", "2", "--gens", "x + x^9", "--target", "x^2",
                       "--expect", "nonmember", "--strategy", "random", "--stall", "100")
    assert code == 2 and json.loads(out)["verdict"] == "undecided"


def test_closure_writes_certificate(tmp_path, capsys):
    cert = tmp_path / "c.json"
    code, out, _ = run(capsys, "closure", "--q", "3", "--gens", "x + x^3", "x^4", "--cert", str(cert))
    assert code == 0 and json.loads(out)["dim"] == 5
    assert run(capsys, "check-cert", str(cert))[0] == 0


def test_binom_table(capsys):
    code, out, _ = run(capsys, "binom-table", "--q", "5", "--case", "II")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows and all(r["match"] == "1" for r in rows)
    assert list(rows[0]) == ["r", "t", "j", "formula", "oracle", "match"]


@pytest.mark.parametrize("argv,code", [
    (["--which", "g-base", "--q", "5"], 0),
    (["--which", "g-step", "--q", "5", "--seed", "3"], 0),
    (["--which", "h", "--q", "7", "--r", "5"], 0),
    (["--which", "h", "--q", "9", "--r", "3"], 1),
])
def test_identity_check(capsys, argv, code):
    got, out, _ = run(capsys, "identity-check", *argv)
    assert got == code
    assert json.loads(out)["status"] == ("pass" if code == 0 else "fail")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tspace_lab", "suite", "summary", "--q", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "summary: pass=7" in res.stdout
