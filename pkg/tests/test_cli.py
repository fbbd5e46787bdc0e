import json
import shutil
import subprocess

import pytest

from hardy_lab import cli
from hardy_lab.errors import ConfigInvalid

FAST = ["--n", "1024", "--m", "64"]


def _run(argv, tmp_path):
    return cli.main(argv + ["--out", str(tmp_path)])


def test_list(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    for name in cli.SCENARIOS:
        assert name in out
    assert cli.main(["list", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [d["id"] for d in data] == list(cli.SCENARIOS)


def test_sweep_writes_artifacts(tmp_path):
    code = _run(["sweep-alpha", "--alphas", "0.3,1.0", "--m-check", "32"] + FAST, tmp_path)
    assert code == 0
    out = tmp_path / "sweep-alpha"
    doc = json.loads((out / "report.json").read_text())
    assert doc["schema"] == cli.SCHEMA
    assert doc["passed"] is True
    assert "wall" not in json.dumps(doc)
    assert (out / "summary.txt").read_text().startswith("scenario: sweep-alpha")
    csvs = sorted(p.name for p in out.glob("spectrum_*.csv"))
    assert csvs == sorted(doc["spectra"].values())


def test_report_is_byte_stable_across_jobs(tmp_path):
    args = ["sweep-alpha", "--alphas", "0.3,1.0,2.0", "--m-check", "32"] + FAST
    _run(args + ["--jobs", "1"], tmp_path / "a")
    _run(args + ["--jobs", "3"], tmp_path / "b")
    a = (tmp_path / "a" / "sweep-alpha" / "report.json").read_bytes()
    b = (tmp_path / "b" / "sweep-alpha" / "report.json").read_bytes()
    assert a == b


def test_failing_scenario_exits_one(tmp_path):
    # the order-m sections cannot resolve the alpha=1.7 kernel to 1e-3
    assert _run(["sweep-alpha", "--alphas", "1.7", "--m-check", "32"] + FAST, tmp_path) == 1


def test_endpoint_alpha_exits_two(tmp_path, capsys):
    assert _run(["sweep-alpha", "--alphas", "0.5"], tmp_path) == 2
    assert "EndpointAlpha" in capsys.readouterr().err


def test_unknown_scenario_suggests(tmp_path, capsys):
    assert _run(["run", "sweep-alpa"], tmp_path) == 2
    assert "sweep-alpha" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["theorem1", "--n", "100"],
    ["theorem1", "--n", "256", "--m", "128"],
    ["theorem1", "--tol", "0.5"],
    ["theorem1", "--jobs", "0"],
    ["complement-s5", "--d", "8"],
    ["example-s4", "--blaschke", "-1"],
])
def test_invalid_config_exits_two(argv, tmp_path):
    assert _run(argv, tmp_path) == 2


def test_out_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env"))
    assert cli.main(["theorem1", "--instance", "f1-z2"] + FAST) == 0
    assert (tmp_path / "env" / "theorem1" / "report.json").exists()


@pytest.mark.parametrize("argv", [
    ["theorem1"],
    ["lemma-hss", "--lambdas", "0,0.3"],
    ["example-s4", "--blaschke", "1"],
    ["theorem2-witness", "--d", "16"],
])
def test_scenarios_pass(argv, tmp_path):
    assert _run(argv + ["--m", "128"], tmp_path) == 0


def test_validate_direct():
    with pytest.raises(ConfigInvalid):
        cli.RunConfig("nope").validate()
    assert cli.RunConfig("theorem1").validate().n == 4096


def test_canon_rounding():
    assert cli._canon(1 / 3) == 0.3333333333
    assert cli._canon(float("nan")) is None
    assert cli._canon({"x": (1, 2.0)}) == {"x": [1, 2.0]}
    assert cli._canon(1 + 2j) == [1.0, 2.0]


@pytest.mark.skipif(shutil.which("hardy-lab") is None, reason="console script not installed")
def test_console_script(tmp_path):
    res = subprocess.run(["hardy-lab", "list"], capture_output=True, text=True, check=True)
    assert "sweep-alpha" in res.stdout
