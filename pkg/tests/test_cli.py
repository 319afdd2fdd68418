import json
import shutil
import subprocess
import sys

import pytest

from h1jump.cli import main


@pytest.fixture
def config(tmp_path):
    def write(data):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(data))
        return str(path)
    return write


def test_verify_stdout_and_status(config, capsys):
    assert main(["verify", "--config", config({})]) == 0
    out, err = capsys.readouterr()
    report = json.loads(out)
    assert report["pass"] and err.strip().endswith("PASS")
    assert report["report_hash"]


def test_verify_lock_roundtrip_is_byte_identical(config, tmp_path):
    cfg, lock = config({}), tmp_path / "tau.lock"
    first, second = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["verify", "--config", cfg, "--lock", str(lock), "--out", str(first)]) == 0
    assert json.loads(lock.read_text())["basis_order_version"] == 1
    assert main(["verify", "--config", cfg, "--lock", str(lock), "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_verify_jobs_does_not_change_report(config, tmp_path):
    cfg = config({})
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--config", cfg, "--out", str(a)])
    main(["verify", "--config", cfg, "--out", str(b), "--jobs", "2"])
    assert a.read_bytes() == b.read_bytes()


def test_verify_config_errors(config, capsys):
    assert main(["verify", "--config", config({"a": [1, 0], "b": [2, 0]})]) == 2
    assert "sections not distinct" in capsys.readouterr().err
    assert main(["verify", "--config", config({"samples": [0]})]) == 2
    assert main(["verify", "--config", "/nonexistent/config.json"]) == 2


def test_verify_math_failure(config, capsys):
    assert main(["verify", "--config", config({"tau": {"mode": "fixed", "coeffs": {}}})]) == 1
    assert "some_sample_verified_smooth" in capsys.readouterr().err


def test_splitting_type(tmp_path, capsys):
    m = tmp_path / "g.json"
    m.write_text(json.dumps([["z^-1", "t"], ["0", "z"]]))
    assert main(["splitting-type", "--matrix", str(m), "--param", "0"]) == 0
    assert json.loads(capsys.readouterr().out) == {"splitting_type": [-1, 1], "det_degree": 0}
    assert main(["splitting-type", "--matrix", str(m), "--param", "-3/2"]) == 0
    assert json.loads(capsys.readouterr().out)["splitting_type"] == [0, 0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([["z", "0"], ["0", "1+z"]]))
    assert main(["splitting-type", "--matrix", str(bad)]) == 1


def test_cohomology(capsys):
    assert main(["cohomology", "--e", "-1,0,1", "--a", "-4", "--b", "-1", "--witness"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pushforward"] == out["cox"] == [0, 0, 1, 1]
    assert len(out["witnesses"]["2"]) == 1 and len(out["witnesses"]["3"]) == 1
    assert main(["cohomology", "--e", "1,2", "--a", "0", "--b", "0"]) == 2


def test_smooth(capsys):
    assert main(["smooth", "--g0", "x1^4+x2^4", "--g1", "x2^4+x3^4"]) == 0
    assert capsys.readouterr().out.strip() == "smooth"
    assert main(["smooth", "--g0", "x1^4", "--g1", "x2^4"]) == 1
    assert capsys.readouterr().out.startswith("singular at [")
    assert main(["smooth", "--g0", "x1^3", "--g1", "x2^4"]) == 2


def test_find_tau(config, tmp_path, capsys):
    lock = tmp_path / "tau.lock"
    assert main(["find-tau", "--config", config({}), "--lock", str(lock), "--seed", "3"]) == 0
    data = json.loads(lock.read_text())
    assert data["seed"] == 3 and json.loads(capsys.readouterr().out) == data
    exhausted = config({"tau": {"mode": "search", "coeff_range": [0, 0], "max_attempts": 2}})
    assert main(["find-tau", "--config", exhausted, "--lock", str(lock)]) == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


@pytest.mark.skipif(shutil.which("h1jump") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["h1jump", "cohomology", "--e", "0,0,0", "--a", "0", "--b", "0"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["cox"] == [1, 0, 0, 0]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "h1jump.cli", "smooth", "--g0", "x1^4", "--g1", "x2^4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 1
