"""End-to-end command-line behavior: document shapes, exit codes, output
files, and byte-level determinism."""
import json
import subprocess
import sys

import pytest

from tdpair import CHECK_IDS, SCHEMA_VERSION
from tdpair.cli import CSV_HEADER, main


def run_cli(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def write_pair(tmp_path, a_rows, astar_rows, name="pair.json",
               field=None, schema=SCHEMA_VERSION):
    doc = {
        "schema": schema,
        "field": {"kind": "rational"} if field is None else field,
        "A": a_rows,
        "Astar": astar_rows,
    }
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def stored_kraw2(tmp_path, capsys):
    path = str(tmp_path / "kraw2.json")
    rc = main(["construct", "krawtchouk", "--d", "2", "--out", path])
    capsys.readouterr()
    assert rc == 0
    return path


def test_construct_krawtchouk_stdout(capsys):
    rc, out, err = run_cli(capsys, ["construct", "krawtchouk", "--d", "2"])
    assert rc == 0
    assert err == ""
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA_VERSION
    assert doc["d"] == 2
    assert doc["shape"] == [1, 1, 1]
    assert doc["theta"] == ["2", "0", "-2"]
    assert doc["leonard"]["phi"] == ["-4", "-4"]


def test_construct_prime_field(capsys):
    rc, out, _ = run_cli(capsys, ["construct", "krawtchouk", "--d", "4",
                                  "--p", "3", "--field", "prime:101"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["field"] == {"kind": "prime", "p": 101}


def test_construct_small_prime_field(capsys):
    rc, out, _ = run_cli(capsys, ["construct", "krawtchouk", "--d", "5",
                                  "--field", "prime:7"])
    assert rc == 0
    assert json.loads(out)["d"] == 5


def test_construct_leonard_zero_phi(capsys):
    rc, _, err = run_cli(capsys, ["construct", "leonard", "--theta", "1,-1",
                                  "--thetastar", "1,-1", "--phi", "0"])
    assert rc == 2
    assert err.startswith("error:")


def test_construct_leonard_negative_scalars(capsys):
    rc, out, _ = run_cli(capsys, [
        "construct", "leonard", "--theta", "3,1,-1,-3",
        "--thetastar", "3,1,-1,-3", "--phi=-6,-8,-6"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["leonard"]["phi"] == ["-6", "-8", "-6"]
    assert doc["leonard"]["b"] == ["3", "2", "1"]


def test_construct_inadmissible_parameter(capsys):
    rc, out, err = run_cli(capsys, ["construct", "krawtchouk", "--d", "2",
                                    "--p", "1"])
    assert rc == 2
    assert out == ""
    assert err.startswith("error:")


def test_verify_constructed_pair(stored_kraw2, capsys):
    rc, out, err = run_cli(capsys, ["verify", stored_kraw2])
    assert rc == 0
    doc = json.loads(out)
    assert set(doc) == {"schema", "count", "systems", "ok"}
    assert doc["ok"] is True
    assert doc["count"] == len(doc["systems"]) == 4
    for entry in doc["systems"]:
        assert entry["ok"] is True
        ids = [c["check-id"] for c in entry["checks"]]
        assert ids == list(CHECK_IDS)
        assert all("seconds" not in c for c in entry["checks"])


def test_verify_checks_subset_and_timings(stored_kraw2, capsys):
    rc, out, _ = run_cli(capsys, ["verify", stored_kraw2,
                                  "--checks", "master,section5", "--timings"])
    assert rc == 0
    doc = json.loads(out)
    for entry in doc["systems"]:
        ids = [c["check-id"] for c in entry["checks"]]
        assert ids == ["section5", "master"]
        assert all(isinstance(c["seconds"], float) for c in entry["checks"])


def test_verify_rejection(tmp_path, capsys):
    path = write_pair(tmp_path, [["1", "0"], ["0", "2"]],
                      [["1", "0"], ["0", "2"]])
    rc, out, _ = run_cli(capsys, ["verify", path])
    assert rc == 1
    doc = json.loads(out)
    assert doc["ok"] is False
    assert doc["systems"] == []
    assert doc["rejection"]["reason"] == "reducible"


def test_verify_beta_contradiction(stored_kraw2, tmp_path, capsys):
    path = str(tmp_path / "kraw3.json")
    assert main(["construct", "krawtchouk", "--d", "3",
                 "--out", path]) == 0
    capsys.readouterr()
    rc, out, err = run_cli(capsys, ["verify", path, "--beta", "5"])
    assert rc == 2
    assert err.startswith("error:")


def test_verify_beta_override_small_diameter(tmp_path, capsys):
    path = str(tmp_path / "kraw1.json")
    assert main(["construct", "krawtchouk", "--d", "1", "--out", path]) == 0
    capsys.readouterr()
    rc, out, _ = run_cli(capsys, ["verify", path, "--beta", "4",
                                  "--checks", "master"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["systems"][0]["parameters"]["beta"] == "4"


def test_verify_output_file(stored_kraw2, tmp_path, capsys):
    out_path = tmp_path / "report.json"
    rc, out, _ = run_cli(capsys, ["verify", stored_kraw2,
                                  "--out", str(out_path)])
    assert rc == 0
    assert out == ""
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    assert doc["ok"] is True


def test_report_json(stored_kraw2, capsys):
    rc, out, _ = run_cli(capsys, ["report", stored_kraw2])
    assert rc == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    for entry in doc["systems"]:
        assert entry["shape"] == [1, 1, 1]
        assert len(entry["tables"]) == 2
        assert entry["leonard"] is not None
        assert len(entry["leonard"]["phi"]) == 2


def test_report_csv(stored_kraw2, capsys):
    rc, out, _ = run_cli(capsys, ["report", stored_kraw2, "--format", "csv"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert any(line.startswith("0,section10,R_power,") for line in lines)
    assert any(",leonard,phi," in line for line in lines)


def test_report_csv_rejection(tmp_path, capsys):
    path = write_pair(tmp_path, [["1", "0"], ["0", "2"]],
                      [["1", "0"], ["0", "2"]])
    rc, out, err = run_cli(capsys, ["report", path, "--format", "csv"])
    assert rc == 1
    assert out == ",".join(CSV_HEADER) + "\n"
    assert "rejected: reducible" in err


def test_malformed_inputs(tmp_path, capsys):
    rc, _, err = run_cli(capsys, ["verify", str(tmp_path / "absent.json")])
    assert rc == 2 and err.startswith("error:")

    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json", encoding="utf-8")
    rc, _, err = run_cli(capsys, ["verify", str(garbled)])
    assert rc == 2 and err.startswith("error:")

    stale = write_pair(tmp_path, [["0"]], [["0"]], name="stale.json",
                       schema=99)
    rc, _, err = run_cli(capsys, ["verify", stale])
    assert rc == 2 and err.startswith("error:")

    badfield = write_pair(tmp_path, [["0"]], [["0"]], name="badfield.json",
                          field={"kind": "septimal"})
    rc, _, err = run_cli(capsys, ["verify", badfield])
    assert rc == 2 and err.startswith("error:")


def test_unknown_check_id(stored_kraw2, capsys):
    rc, _, err = run_cli(capsys, ["verify", stored_kraw2,
                                  "--checks", "sectionX"])
    assert rc == 2
    assert "unknown check ids" in err


def test_usage_errors_exit_two(capsys):
    assert main(["construct", "krawtchouk"]) == 2
    capsys.readouterr()
    assert main(["report", "whatever.json", "--format", "yaml"]) == 2
    capsys.readouterr()
    assert main([]) == 2
    capsys.readouterr()


def test_verify_is_byte_deterministic(stored_kraw2, capsys, monkeypatch):
    rc, first, _ = run_cli(capsys, ["verify", stored_kraw2])
    assert rc == 0
    monkeypatch.setenv("TDPAIR_THREADS", "8")
    rc, second, _ = run_cli(capsys, ["verify", stored_kraw2])
    assert rc == 0
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tdpair", "construct", "krawtchouk",
         "--d", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["theta"] == ["1", "-1"]


def test_console_script_entry_point():
    proc = subprocess.run(
        ["tdpair", "construct", "krawtchouk", "--d", "1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["d"] == 1
