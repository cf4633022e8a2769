import os

import pytest

from rossonct.cli import main
from rossonct.experiments import experiment_ids


def test_list_catalog(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.split()
    assert len(out) >= 15
    assert len(out) == len(set(out))
    assert out == experiment_ids()


def test_unknown_experiment_rejected(tmp_path, capsys):
    rc = main(["run", "no-such-exp", "--out", str(tmp_path)])
    assert rc == 2
    assert "unknown experiment" in capsys.readouterr().err
    assert list(tmp_path.iterdir()) == []


def test_no_selection_rejected(tmp_path):
    assert main(["run", "--out", str(tmp_path)]) == 2


def test_run_writes_csv_and_summary(tmp_path, capsys):
    rc = main(["run", "fact-48", "example-412",
               "--n-max", "10000", "--out", str(tmp_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "fact-48 PASS" in out
    assert "example-412 PASS" in out
    csv = (tmp_path / "example-412.csv").read_text()
    header = csv.splitlines()[0]
    assert header == "n,norm_h1n,norm_h2n,norm_img1,norm_img2"
    assert "\r" not in csv


def test_run_deterministic_bytes(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out in (a, b):
        assert main(["run", "qs-probe", "example-412", "--seed", "7",
                     "--out", str(out)]) == 0
    for name in ("qs-probe.csv", "example-412.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text(f"n_max = 10000\nout = {tmp_path / 'from_cfg'}\n")
    # config alone routes output
    assert main(["run", "fact-48", "--config", str(cfg)]) == 0
    assert (tmp_path / "from_cfg" / "fact-48.csv").exists()
    # flag overrides the config file
    assert main(["run", "fact-48", "--config", str(cfg),
                 "--out", str(tmp_path / "from_flag")]) == 0
    assert (tmp_path / "from_flag" / "fact-48.csv").exists()


def test_config_file_bad_key(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("volume=11\n")
    assert main(["run", "fact-48", "--config", str(cfg)]) == 2


def test_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ROSSONCT_OUT", str(tmp_path / "envout"))
    assert main(["run", "fact-48"]) == 0
    assert (tmp_path / "envout" / "fact-48.csv").exists()


def test_figures_flag(tmp_path):
    assert main(["run", "example-412", "--n-max", "10000", "--figures",
                 "--out", str(tmp_path)]) == 0
    assert (tmp_path / "example-412.png").stat().st_size > 0


def test_field_selection(tmp_path, capsys):
    rc = main(["run", "metric-axioms", "--field", "Q", "--d", "2",
               "--samples", "2000", "--seed", "7", "--out", str(tmp_path)])
    assert rc == 0
    csv = (tmp_path / "metric-axioms.csv").read_text()
    body = csv.splitlines()[1:]
    assert len(body) == 1 and body[0].startswith("H2_Q,")
