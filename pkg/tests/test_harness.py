import json
import os

import pytest

from favpoints import cli, harness
from favpoints.harness import ConfigError, ExperimentConfig


def small_config(out, **kw):
    base = dict(scales=[8, 12, 16], alpha=0.05, beta=0.5, j=2, trials=2,
                seed=1, workers=1, out=str(out))
    base.update(kw)
    return ExperimentConfig(**base)


def test_run_experiment_outputs(tmp_path):
    man = harness.run_experiment(small_config(tmp_path))
    results = tmp_path / "results.csv"
    manifest = tmp_path / "manifest.json"
    assert results.exists() and manifest.exists()
    lines = results.read_text().splitlines()
    assert lines[0] == ",".join(harness.RESULTS_HEADER)
    assert len(lines) == 1 + 3 * 2
    doc = json.loads(manifest.read_text())
    assert doc["complete"]
    assert len(doc["per_scale"]) == 3
    assert man.fit is None or "slope" in man.fit
    for row in lines[1:]:
        n, alpha, beta, j, kind, trial, count, set_size, seed = row.split(",")
        assert kind == "favorite"
        assert int(count) <= int(set_size) ** 2


def test_byte_identical_reruns(tmp_path):
    harness.run_experiment(small_config(tmp_path / "a"))
    harness.run_experiment(small_config(tmp_path / "b"))
    assert (tmp_path / "a/results.csv").read_bytes() == (tmp_path / "b/results.csv").read_bytes()


def test_worker_count_independence(tmp_path):
    harness.run_experiment(small_config(tmp_path / "w1", workers=1))
    harness.run_experiment(small_config(tmp_path / "w2", workers=2))
    assert (tmp_path / "w1/results.csv").read_bytes() == (tmp_path / "w2/results.csv").read_bytes()


def test_results_append_only(tmp_path):
    harness.run_experiment(small_config(tmp_path))
    harness.run_experiment(small_config(tmp_path))
    lines = (tmp_path / "results.csv").read_text().splitlines()
    assert len(lines) == 1 + 2 * 6
    assert lines[1:7] == lines[7:]


def test_late_kind(tmp_path):
    man = harness.run_experiment(
        small_config(tmp_path, scales=[4, 6, 8], kind="late", alpha=0.2, trials=1)
    )
    assert all(s["trials"] == 1 for s in man.per_scale)


def test_high_kind(tmp_path):
    man = harness.run_experiment(
        small_config(tmp_path, scales=[6, 8, 10], kind="high", alpha=0.2, trials=1)
    )
    assert all(s["mean_set_size"] >= 0 for s in man.per_scale)


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(scales=[]).validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(scales=[16, 8]).validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(scales=[8], trials=0).validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(scales=[8], alpha=1.5).validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(scales=[8], kind="bogus").validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(scales=[256], kind="high").validate()


def test_load_config_file(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text(
        "[experiment]\nscales = 8, 12, 16\nalpha = 0.05\ntrials = 2\nseed = 9\n"
    )
    cfg = harness.load_config(str(path))
    assert cfg.scales == [8, 12, 16]
    assert cfg.alpha == 0.05 and cfg.trials == 2 and cfg.seed == 9
    cfg = harness.load_config(str(path), overrides={"trials": 5, "seed": None})
    assert cfg.trials == 5 and cfg.seed == 9
    with pytest.raises(ConfigError):
        harness.load_config(str(tmp_path / "missing.ini"))


def test_inspect_run_detects_incomplete(tmp_path):
    (tmp_path / "results.csv").write_text(",".join(harness.RESULTS_HEADER) + "\n")
    info = harness.inspect_run(str(tmp_path))
    assert not info["complete"]
    harness.run_experiment(small_config(tmp_path))
    info = harness.inspect_run(str(tmp_path))
    assert info["complete"]


def test_cli_simulate_and_report(tmp_path, capsys):
    out = str(tmp_path / "run")
    rc = cli.main([
        "simulate", "--scales", "8,12,16", "--alpha", "0.05", "--trials", "1",
        "--seed", "3", "--out", out,
    ])
    assert rc == 0
    assert os.path.exists(os.path.join(out, "results.csv"))
    assert os.path.exists(os.path.join(out, "manifest.json"))
    rc = cli.main(["report", "--out", out])
    assert rc == 0
    assert "complete" in capsys.readouterr().out


def test_cli_exponents_table(capsys):
    rc = cli.main(["exponents", "--grid", "4"])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("alpha,beta,")
    assert len(out) == 1 + 4 * 4


def test_cli_verify_writes_verdict(tmp_path, capsys):
    rc = cli.main(["verify-exponents", "--out", str(tmp_path)])
    assert rc == 0
    doc = json.loads((tmp_path / "verdict.json").read_text())
    assert doc["suite"] == "exponents"
    assert doc["passed"]
    assert all(c["passed"] for c in doc["checks"])


def test_cli_config_error_exit_code(tmp_path):
    rc = cli.main(["simulate", "--scales", "16,8", "--out", str(tmp_path)])
    assert rc == 2
    rc = cli.main(["simulate", "--config", str(tmp_path / "nope.ini")])
    assert rc == 2


def test_cli_gff_sample(tmp_path):
    rc = cli.main([
        "gff-sample", "--scales", "6", "--trials", "2", "--seed", "4",
        "--out", str(tmp_path),
    ])
    assert rc == 0
    made = sorted(os.listdir(tmp_path))
    assert any(f.endswith(".bin") for f in made)
    assert any(f.endswith(".json") for f in made)
