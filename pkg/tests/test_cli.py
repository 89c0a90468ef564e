import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from effham.cli import format_cell, main

from _support import config_path

SMALL = {
    "experiment": "bound_scatter",
    "model": {"dim_min": 4, "dim_max": 6, "instance": 0},
    "sweep": {"parameter": "model.instance", "start": 0, "stop": 3, "points": 4},
    "seed": 11,
    "output": "small.csv",
}


@pytest.fixture
def small(tmp_path):
    p = tmp_path / "small.json"
    p.write_text(json.dumps(SMALL))
    return p


@pytest.mark.parametrize("value,text", [
    (None, ""), (float("nan"), ""), (float("inf"), ""), (True, "1"), (np.bool_(False), "0"),
    (7, "7"), (np.int64(-2), "-2"), (-0.0, "0"), (0.1, "0.1"), (1 / 3, "0.333333333333"),
])
def test_format_cell(value, text):
    assert format_cell(value) == text


def test_validate(small, capsys):
    assert main(["validate", str(small)]) == 0
    assert capsys.readouterr().out.startswith("ok: bound_scatter, 4 points")


def test_run_writes_csv_and_metadata(small, tmp_path, monkeypatch):
    monkeypatch.delenv("EFFHAM_SEED", raising=False)
    out = tmp_path / "out"
    assert main(["run", str(small), "--jobs", "1", "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out / "small.csv")))
    assert len(rows) == 4 and rows[0]["instance"] == "0"
    meta = json.loads((out / "small.json").read_text())
    assert meta["seed"] == 11 and meta["rows"] == 4
    assert meta["columns"][-1] == "warnings"

    monkeypatch.setenv("EFFHAM_SEED", "12")
    out2 = tmp_path / "out2"
    assert main(["run", str(small), "--jobs", "1", "--out", str(out2)]) == 0
    assert json.loads((out2 / "small.json").read_text())["seed"] == 12
    assert (out2 / "small.csv").read_text() != (out / "small.csv").read_text()


def test_oracle_json(capsys):
    args = ["oracle", "three_level_la_4th", "w1=4.5", "w2=5.0", "wc=5.6", "g1=0.1",
            "g2=0.1"]
    assert main(args) == 0
    out = json.loads(capsys.readouterr().out)
    assert isinstance(out, list) and isinstance(out[0], float)


@pytest.mark.parametrize("argv,code", [
    (["oracle", "nope"], 2),
    (["oracle", "kappa_analytic", "g12"], 2),
    (["oracle", "kappa_analytic", "g12=x"], 2),
    (["oracle", "kappa_analytic", "bogus=1"], 2),
    (["validate", "/nonexistent/config.json"], 1),
    (["run", "/nonexistent/config.json", "--jobs", "0"], 2),
])
def test_error_codes(argv, code, capsys):
    assert main(argv) == code
    assert capsys.readouterr().err.startswith("error:")


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "effham.cli", "validate",
                          str(config_path("compare3"))], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("ok: compare3")
