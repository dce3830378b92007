import csv
import io
import json

import pytest

from graphcurv.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def example_file(tmp_path, capsys):
    path = tmp_path / "e.json"
    assert main(["gen", "example41", "-o", str(path)]) == 0
    return path


def test_gen_and_combinatorial(tmp_path, capsys):
    path = tmp_path / "p.json"
    assert main(["gen", "prism", "6", "--embed", "-o", str(path)]) == 0
    assert "rotation" in json.loads(path.read_text())
    code, out, _ = _run(capsys, "curv", "--notion", "combinatorial", str(path))
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["vertex", "numerator", "denominator"]
    assert all(r[1:] == ["1", "6"] for r in rows[1:]) and len(rows) == 13
    code, out, _ = _run(capsys, "faces", str(path))
    assert sorted(len(f) for f in json.loads(out)) == [4] * 6 + [6] * 2


def test_combinatorial_needs_rotation(example_file, capsys):
    code, _, err = _run(capsys, "curv", "--notion", "combinatorial", str(example_file))
    assert code == 2 and "rotation" in err


def test_ollivier_csv_and_certificates(example_file, tmp_path, capsys):
    cert_path = tmp_path / "c.json"
    code, out, _ = _run(
        capsys, "curv", "--notion", "ollivier", "--p", "1/2", "--certify", "--certify-out", str(cert_path), str(example_file)
    )
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["x", "y", "numerator", "denominator"]
    assert ["0", "1", "1", "6"] in rows
    certs = json.loads(cert_path.read_text())
    first = next(c for c in certs if (c["x"], c["y"]) == (0, 1))
    assert first["W1"] == "5/6" and first["plan"] and first["potential"]


def test_lly_and_be(example_file, capsys):
    code, out, _ = _run(capsys, "curv", "--notion", "lly", str(example_file))
    assert code == 0 and "0,1,1,3" in out.splitlines()
    code, out, _ = _run(capsys, "curv", "--notion", "bakry-emery", "--dim", "inf", str(example_file))
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["vertex", "K", "certificate_slack"] and len(rows) == 8


def test_spec_heat_cheeger(example_file, tmp_path, capsys):
    code, out, _ = _run(capsys, "spec", str(example_file))
    doc = json.loads(out)
    assert code == 0 and len(doc["lambda"]) == 7 and doc["lambda1"] == doc["lambda"][1]
    f = tmp_path / "f.json"
    f.write_text(json.dumps([1, 0, 0, 0, 0, 0, 0]))
    code, out, _ = _run(capsys, "heat", str(example_file), "--t", "0.5", "--f", str(f))
    values = json.loads(out)
    assert code == 0 and len(values) == 7 and all(v >= 0 for v in values)
    code, out, _ = _run(capsys, "cheeger", str(example_file))
    assert json.loads(out)["cheeger"] == "1/3"


def test_verify_subcommand(tmp_path, capsys):
    zoo = tmp_path / "zoo.json"
    zoo.write_text(json.dumps({"graphs": [{"name": "q3", "family": "hypercube", "params": [3]}]}))
    report = tmp_path / "r.json"
    code, out, _ = _run(capsys, "verify", "--zoo", str(zoo), "--only", "bonnet-myers-be,lichnerowicz-ollivier", "--json", str(report))
    assert code == 0 and "bonnet-myers-be" in out
    assert json.loads(report.read_text())["summary"]["FAILED"] == 0
    code, _, err = _run(capsys, "verify", "--only", "nonsense")
    assert code == 2 and "unknown theorem" in err


def test_bad_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "edges": [[0, 0]]}))
    code, _, err = _run(capsys, "spec", str(bad))
    assert code == 2 and "loop" in err
    code, _, err = _run(capsys, "spec", str(tmp_path / "missing.json"))
    assert code == 2
