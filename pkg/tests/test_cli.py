import json

import pytest

from minvalset.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_field(capsys):
    code, out = run_json(capsys, "field", "--field", "3^4", "--elements")
    assert code == 0 and out["schema"] == 1
    assert out["q"] == 81 and len(out["elements"]) == 81


def test_test_command(capsys):
    code, out = run_json(capsys, "test", "--field", "3^2", "x^2")
    assert code == 0 and out["mvsp"] and out["size"] == 5
    assert out["certificate"]["v"] == 2
    assert out["structure"] is not None
    code, out = run_json(capsys, "test", "--field", "3^2", "x^4 + x")
    assert code == 1 and not out["mvsp"]
    code, out = run_json(capsys, "test", "--field", "2^2", "x")
    assert code == 0 and out["size"] == 4
    code, out = run_json(capsys, "test", "--field", "3^4", "x^9 + x^3", "--as-linearized", "1")
    assert out["linearized"] == [0, 1, 1]


def test_parse_error(capsys):
    code, _, err = run(capsys, "test", "--field", "3^2", "x^^2")
    assert code == 2 and "ParseError" in err
    code, _, err = run(capsys, "test", "--field", "4^2", "x")
    assert code == 2 and "NotPrime" in err


def test_cert(capsys):
    code, out = run_json(capsys, "cert", "--field", "3^4", "x^6 + x^4 + x^2")
    assert code == 0 and out["certificate"]["m"] == 3
    code, out = run_json(capsys, "cert", "--field", "3^2", "x^4 + x")
    assert code == 1


def test_enumerate(capsys, tmp_path):
    code, out = run_json(capsys, "enumerate", "--field", "2^3", "--max-deg", "3", "--workers", "1")
    assert code == 0 and out["violations"] == []
    code, out = run_json(capsys, "enumerate", "--field", "3^2", "--max-deg", "4", "--shard", "0/4",
                         "--workers", "1", "--out", str(tmp_path))
    assert code == 0 and not out["resumed"]
    code, out = run_json(capsys, "enumerate", "--field", "3^2", "--max-deg", "4", "--shard", "0/4",
                         "--workers", "1", "--out", str(tmp_path))
    assert code == 0 and out["resumed"]
    assert (tmp_path / "manifest.json").exists()
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--field", "3^2", "--max-deg", "4", "--shard", "5/4"])
    assert exc.value.code == 2


def test_enumerate_jsonl_classes(capsys):
    code, out, _ = run(capsys, "enumerate", "--field", "2^2", "--max-deg", "2", "--workers", "1",
                       "--format", "jsonl")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all("coeffs" in h for h in lines)
    code, out = run_json(capsys, "enumerate", "--field", "2^2", "--max-deg", "2", "--workers", "1",
                         "--classes")
    assert sum(c["size"] for c in out["classes"]) == out["hits"]


def test_conjecture(capsys):
    code, out = run_json(capsys, "conjecture", "--field", "3^2", "--basis", "1", "--k", "2", "--v", "2")
    assert code == 0 and out["equal"]
    code, out = run_json(capsys, "conjecture", "--field", "3^4", "--basis", "1,g", "--k", "1", "--v", "1")
    assert code == 0 and out["equal"] and out["branch"] == "subspace"
    code, _, err = run(capsys, "conjecture", "--field", "3^2", "--basis", "1", "--k", "2", "--v", "3")
    assert code == 2 and "BadHypotheses" in err


def test_fnc(capsys):
    code, out = run_json(capsys, "fnc", "--field", "3^2", "--d", "4", "x^3 + x")
    assert code == 0 and out["fnc_direct"] and out["fnc_by_mvsp"]
    code, out = run_json(capsys, "fnc", "--field", "3^2", "y^4 = x^3 + x")
    assert code == 0 and out["d"] == 4
    code, out = run_json(capsys, "fnc", "--field", "3^2", "--d", "2", "x^3 + x")
    assert code == 1 and not out["fnc_direct"]
    code, _, err = run(capsys, "fnc", "--field", "3^2", "--d", "2", "x^2")
    assert code == 2 and "Kummer" in err


def test_families_and_charsum(capsys):
    code, out = run_json(capsys, "families", "--field", "3^4", "--family", "dim2", "--beta", "g", "--v", "2")
    assert code == 0 and out["mvsp"] and out["value_set_matches"]
    code, _, err = run(capsys, "families", "--field", "3^4", "--family", "subfield_p", "--a", "g")
    assert code == 2 and "ConstraintViolated" in err
    code, out = run_json(capsys, "charsum", "--field", "3^2", "--r", "4", "x^3 + x + 1")
    assert code == 0 and out["within"]


def test_table_format(capsys):
    code, out, _ = run(capsys, "test", "--field", "3^2", "x^2", "--format", "table")
    assert code == 0 and "mvsp: True" in out
