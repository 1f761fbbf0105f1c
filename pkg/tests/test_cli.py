import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from flagpush.cli import main, parse_int_list, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_parse_int_list():
    assert parse_int_list("2..5") == [2, 3, 4, 5]
    assert parse_int_list("3, 1,2") == [1, 2, 3]
    assert parse_int_list("1,4..5") == [1, 4, 5]
    for bad in ["5..2", "x", "1..", ""]:
        with pytest.raises(UsageError):
            parse_int_list(bad)


def test_pushforward_rank2(capsys):
    code, rep = run_json(capsys, "pushforward", "--r", "2", "--poly", "t1")
    assert code == 0
    assert (rep["tower"], rep["dd"], rep["formula"]["printed-minus"]["value"]) == ("1", "1", "1")


def test_pushforward_zero_c1(capsys):
    code, rep = run_json(capsys, "pushforward", "--r", "3", "--poly", "(t1+t2)^3", "--zero-c1")
    assert code == 0
    assert (rep["tower"], rep["dd"], rep["formula"]["printed-minus"]["value"]) == ("0", "0", "0")


def test_pushforward_printed_minus_sign(capsys):
    code, rep = run_json(capsys, "pushforward", "--r", "3", "--poly", "(t1+t2)^2*t1")
    assert rep["formula"]["printed-minus"]["value"] == "-1"
    assert rep["tower"] == rep["dd"] == "-1"


def test_pushforward_text_and_dump(capsys):
    code, out, _ = run(capsys, "pushforward", "--r", "2", "--poly", "xi1^3", "--dump-poly")
    assert code == 0
    assert "tower    1 * e1^2 - 1 * e2" in out
    assert "as y     -1 * y1^3" in out


def test_pushforward_other_alphabets(capsys):
    _, rep = run_json(capsys, "pushforward", "--r", "3", "--poly", "h1^2*h2")
    assert rep["tower"] == "1" and "rejected" in rep["formula"]["plus"]
    _, rep = run_json(capsys, "pushforward", "--r", "3", "--poly", "y3^2*y2 + 1/2*a*y1^3")
    assert rep["tower"] == rep["dd"]


def test_pushforward_wrong_degree_is_explained(capsys):
    code, rep = run_json(capsys, "pushforward", "--r", "3", "--poly", "t1^2")
    assert code == 0
    assert "degree 3 or 4" in rep["formula"]["printed-minus"]["rejected"]


@pytest.mark.parametrize("poly,pos", [("t1 +* t2", 4), ("t1 + z9", 5), ("t1^t2", 3), ("t7", 0)])
def test_parse_errors(capsys, poly, pos):
    code, _, err = run(capsys, "pushforward", "--r", "3", "--poly", poly)
    assert code == 2
    assert f"at position {pos}" in err


def test_unsupported_a_square(capsys):
    code, _, err = run(capsys, "pushforward", "--r", "2", "--poly", "a^2*t1")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["pushforward", "--r", "2"],
    ["pushforward", "--r", "2..3", "--poly", "t1"],
    ["table", "--r", "2", "--format", "text", "--bogus"],
    ["audit", "--format", "cert"],
    ["frobnicate"],
    ["certify"],
    ["certify", "--epsilon", "0.1", "--r", "2"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_audit_rank2(capsys):
    code, rep = run_json(capsys, "audit", "--r", "2", "--seed", "1")
    assert code == 0 and rep["oracles_agree"] and rep["seed"] == 1
    assert {rec["verdict"] for rec in rep["records"]} <= {"MATCH", "INFO"}


def test_audit_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "audit", "--r", "2", "--out", str(tmp_path / "missing" / "x.json"))
    assert code != 0 and "cannot write" in err


def test_audit_out_file(capsys, tmp_path):
    target = tmp_path / "audit.json"
    assert main(["audit", "--r", "2", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["r_values"] == [2]


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_table_ones_rank3(capsys):
    code, out, _ = run(capsys, "table", "--r", "3", "--weights", "ones", "--m", "1..20", "--n", "1")
    rows = _csv_rows(out)
    assert code == 0 and len(rows) == 20
    for i in (1, 2, 3):
        assert len({Fraction(row[f"ratio_{i}"]) * int(row["m"]) for row in rows}) == 1
    assert all(row["seed"] == "0" for row in rows)


def test_table_rank2_kappa(capsys):
    _, out, _ = run(capsys, "table", "--r", "2", "--m", "1..5")
    rows = _csv_rows(out)
    assert all((row["kappa_1"], row["kappa_2"]) == ("-1", "1") for row in rows)
    assert [row["ratio_2"] for row in rows] == ["1", "1/2", "1/3", "1/4", "1/5"]


def test_table_literal_degenerate(capsys):
    _, out, _ = run(capsys, "table", "--r", "3", "--weights", "literal", "--m", "1..5")
    rows = _csv_rows(out)
    assert all(row["degree_coefficient"] == "0" and row["degenerate"] == "true" for row in rows)
    assert all(row["ratio_1"] == "" for row in rows)


def test_table_cert_pipes_into_certify(capsys, tmp_path, monkeypatch):
    cert = tmp_path / "cert.json"
    assert main(["table", "--r", "3", "--m", "1..8", "--format", "cert", "--out", str(cert)]) == 0
    code, rep = run_json(capsys, "certify", str(cert), "--epsilon", "1/1000")
    assert code == 0 and rep["limit"]["verdict"] == "HOLDS"
    assert rep["gap"] == {"r": 3, "epsilon": "1/1000", "threshold": "1/6", "verdict": "ACCEPTED"}
    monkeypatch.setattr(sys, "stdin", io.StringIO(cert.read_text()))
    code, rep = run_json(capsys, "certify", "-", "--frobenius", "2", "3")
    assert rep["limit"]["verdict"] == "HOLDS" and rep["frobenius"] == {"p": 2, "n": 3}


def test_certify_constant_gap_fails(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"r": 2, "d": 2, "mu": "0", "entries": [
        {"deg_f": "1", "qdeg": ["1/2", "-1/2"]}, {"deg_f": "2", "qdeg": ["1", "-1"]}]}))
    code, out, _ = run(capsys, "certify", str(path))
    assert code == 0 and "FAILS" in out


def test_certify_bad_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"r": 2, "d": 1, "mu": "0", "entries": [{"deg_f": "1", "qdeg": ["1", "0"]}]}')
    code, _, err = run(capsys, "certify", str(path))
    assert code == 2 and "invalid certificate" in err
    path.write_text("{nope")
    assert run(capsys, "certify", str(path))[0] == 2
    assert run(capsys, "certify", str(tmp_path / "absent.json"))[0] == 2


def test_certify_gap_and_surface(capsys):
    code, rep = run_json(capsys, "certify", "--epsilon", "1/1000", "--r", "2")
    assert rep["gap"]["verdict"] == "ACCEPTED" and rep["gap"]["threshold"] == "1/2"
    code, rep = run_json(capsys, "certify", "--surface", "1", "0")
    assert rep["surface"]["c2"] == "-1" and rep["surface"]["discriminant"] == "-4"
    assert rep["surface"]["numerically_flat"] is False


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "flagpush.cli", "pushforward", "--r", "2",
                           "--poly", "t1", "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["tower"] == "1"
