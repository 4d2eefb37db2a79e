import json
import subprocess
import sys

import pytest

from semisimp.cli import main


def run(*argv):
    return main(list(argv))


def test_ssimp_group_ver5(tmp_path):
    out = tmp_path / "z5.json"
    code = run("run", "ssimp-group", "--group", "cyclic:5", "--prime", "5", "--generator", "jordan:2",
               "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert len(obj["basis"]) == 4 and obj["provenance"]["closed"] is True


def test_ring_iso_against_catalog(tmp_path):
    s3 = tmp_path / "out" / "s3.json"
    assert run("run", "ssimp-group", "--group", "S3", "--prime", "3", "--out", str(s3)) == 0
    res = tmp_path / "iso.json"
    assert run("run", "ring-iso", "--a", str(s3), "--b", "catalog:group_ring:Z4", "--out", str(res)) == 0
    assert json.loads(res.read_text())["isomorphic"] is True
    assert run("run", "ring-iso", "--a", str(s3), "--b", "catalog:group_ring:Z2xZ2") == 2


def test_char2_task(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run("run", "char2", "--n", "6", "--out", str(out)) == 0
    obj = json.loads(out.read_text())
    assert obj["s"] == 2 and obj["group_rank"] == 2
    assert run("run", "char2", "--n", "6", "--variant", "PGL", "--out", str(out)) == 0
    assert json.loads(out.read_text())["coordinates"] == {"v1": [-2, 1]}


def test_byte_identical_artifacts(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["run", "ssimp-group", "--group", "D5", "--prime", "5", "--generator", "perm_quotient"]
    assert run(*args, "--out", str(a), "--report", str(tmp_path / "a.md")) == 0
    assert run(*args, "--out", str(b), "--report", str(tmp_path / "b.md")) == 0
    assert a.read_bytes() == b.read_bytes()
    md = (tmp_path / "a.md").read_text()
    assert "## Timings" in md


def test_spec_file(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"task": "ssimp-group", "group": "cyclic:3", "prime": 3, "generator": "jordan:2"}))
    assert run("run", "ssimp-group", "--spec", str(spec)) == 0
    spec.write_text(json.dumps({"group": "cyclic:3", "prime": 3, "colour": "blue"}))
    assert run("run", "ssimp-group", "--spec", str(spec)) == 1
    spec.write_text(json.dumps({"task": "char2", "n": 3}))
    assert run("run", "ssimp-group", "--spec", str(spec)) == 1


def test_input_errors(monkeypatch):
    assert run("run", "ssimp-group", "--group", "cyclic:5") == 1
    assert run("run", "ssimp-group", "--group", "nonsense", "--prime", "5") == 1
    assert run("run", "ssimp-group", "--group", "cyclic:5", "--prime", "4") == 1
    assert run("run", "no-such-task") == 1
    assert run("run", "qcase-root", "--n", "4") == 1
    monkeypatch.setenv("SSIMP_SEED", "abc")
    assert run("run", "char2", "--n", "3") == 1


def test_seed_env(monkeypatch, tmp_path):
    monkeypatch.setenv("SSIMP_SEED", "7")
    out = tmp_path / "r.json"
    assert run("run", "ssimp-group", "--group", "cyclic:3", "--prime", "3", "--generator", "jordan:2",
               "--out", str(out)) == 0
    assert json.loads(out.read_text())["provenance"]["seed"] == 7


def test_budget_exit_code():
    assert run("run", "ssimp-group", "--group", "cyclic:7", "--prime", "7", "--generator", "jordan:2",
               "--max-simples", "3") == 3
    assert run("run", "ssimp-group", "--group", "cyclic:5", "--prime", "5", "--generator", "jordan:2",
               "--max-tensor-dim", "6") == 3


def test_ring_validate(tmp_path):
    assert run("run", "ring-validate", "--ring", "catalog:K_l:3") == 0
    obj = json.loads(__import__("semisimp.basedring", fromlist=["x"]).K_l(3).to_json())
    obj["constants"].append([1, 1, 3, 1])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    assert run("run", "ring-validate", "--ring", str(bad)) == 2
    assert run("run", "ring-validate", "--ring", str(tmp_path / "missing.json")) == 1


def test_ring_characters(tmp_path):
    out = tmp_path / "ch.json"
    assert run("run", "ring-characters", "--ring", "catalog:K_l:3", "--out", str(out)) == 0
    codes = sorted(c["formal_codegree"][0] for c in json.loads(out.read_text())["characters"])
    assert codes == pytest.approx([2.343146, 4.0, 4.0, 13.656854], abs=1e-6)
    assert run("run", "ring-characters", "--ring", "catalog:K_inf_trunc:3") == 3


@pytest.mark.parametrize("task", ["vertex-sweep", "verify-equiv", "verify-descent"])
def test_group_tasks(task):
    assert run("run", task, "--group", "S3", "--prime", "3") == 0


def test_sp_check():
    assert run("run", "sp-check", "--p", "3") == 0


def test_qcase_tasks(tmp_path):
    out = tmp_path / "q.json"
    assert run("run", "qcase-root", "--n", "3", "--level", "2", "--out", str(out)) == 0
    obj = json.loads(out.read_text())
    assert obj["verdict"] is True and obj["theta"]
    assert run("run", "qcase-generic", "--level", "2") == 0


def test_lucas_sweep():
    assert run("run", "lucas-sweep", "--max", "40", "--primes", "2,3,7") == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "semisimp", "run", "char2", "--n", "5"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "s = 2" in res.stdout
