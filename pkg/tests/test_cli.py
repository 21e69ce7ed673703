import json

import pytest

from noma_relay import logging as run_logging
from noma_relay.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main

CONFIG = "distance=0.3\nomega_li_db=-15\nr1=3\nr2=0.5\nduplex=FD\n"


@pytest.fixture(autouse=True)
def quiet_run_log(tmp_path, monkeypatch):
    monkeypatch.setattr(run_logging, "RUN_LOG_ENABLED", True)
    monkeypatch.setattr(run_logging, "RUN_LOG_FILE", str(tmp_path / "runs.jsonl"))


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "fd.env"
    path.write_text(CONFIG)
    return path


def test_sweep_writes_csv(tmp_path, config_file):
    out = tmp_path / "sweep.csv"
    code = main(
        [
            "sweep",
            "--config", str(config_file),
            "--metrics", "outage_d1,rate_d1",
            "--snr-db", "0:20:40",
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "snr_db,metric,analytic,mc_mean,mc_se,method,samples"
    assert len(lines) == 1 + 3 * 2


def test_sweep_records_the_run(tmp_path, config_file):
    out = tmp_path / "sweep.json"
    args = ["sweep", "--config", str(config_file), "--metrics", "outage_d1"]
    args += ["--snr-db", "10", "--mc-samples", "5000", "--seed", "9"]
    args += ["--out", str(out), "--format", "json"]
    assert main(args) == EXIT_OK

    (row,) = json.loads(out.read_text())
    assert row["samples"] == 5000
    record = json.loads((tmp_path / "runs.jsonl").read_text().splitlines()[-1])
    assert record["kind"] == "sweep"
    assert record["seed"] == 9
    assert "elapsed_s" in record and "workers" in record


@pytest.mark.parametrize("metrics", [" , ", "outage_d1,goodput"])
def test_sweep_bad_metrics_are_usage_errors(tmp_path, config_file, metrics):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--config", str(config_file), "--metrics", metrics, "--out", str(out)])
    assert code == EXIT_USAGE
    assert not out.exists()


def test_sweep_bad_inputs_are_usage_errors(tmp_path, config_file):
    out = str(tmp_path / "sweep.csv")
    missing = str(tmp_path / "missing.env")
    assert main(["sweep", "--config", missing, "--metrics", "rate_d1", "--out", out]) == EXIT_USAGE
    args = ["sweep", "--config", str(config_file), "--metrics", "rate_d1", "--out", out]
    assert main(args + ["--mc-samples", "0"]) == EXIT_USAGE
    assert main(args + ["--snr-db", "10:5:0"]) == EXIT_USAGE


def test_figure_json(tmp_path):
    out = tmp_path / "fig2.json"
    args = ["figure", "fig2", "--mc-samples", "2000", "--seed", "3"]
    code = main(args + ["--out", str(out), "--format", "json"])
    assert code == EXIT_OK
    rows = json.loads(out.read_text())
    assert {"outage_d1@FD", "oma_outage_d2@OMA"} <= {row["metric"] for row in rows}


def test_unknown_figure(tmp_path):
    code = main(["figure", "fig1", "--mc-samples", "1000", "--out", str(tmp_path / "f.csv")])
    assert code == EXIT_USAGE


def test_validate_is_reproducible(tmp_path, capsys):
    reports = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        args = ["validate", "--grid", "10,30", "--samples", "20000", "--seed", "1"]
        assert main(args + ["--sigma", "5", "--out", str(out)]) == EXIT_OK
        reports.append(out.read_bytes())
    assert reports[0] == reports[1]
    assert "checks passed" in capsys.readouterr().out


def test_validate_failure_exit_code(capsys):
    code = main(["validate", "--grid", "20", "--samples", "5000", "--sigma", "1e-6"])
    assert code == EXIT_FAILED
    assert "FAIL" in capsys.readouterr().err


def test_missing_subcommand_exits():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
