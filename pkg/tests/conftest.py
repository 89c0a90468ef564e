import json
import os
import shutil
import time

import pytest

from _support import config_path, shipped_configs, summary_lines


def pytest_terminal_summary(terminalreporter):
    lines = summary_lines()
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def config_runs(tmp_path_factory):
    """Every shipped config run twice through the CLI: once serially, once with two jobs.

    Returns {name: {"dirs": (a, b), "csv": name of csv, "seconds": first run time}}.
    """
    from effham.cli import main

    saved = os.environ.pop("EFFHAM_SEED", None)
    out = {}
    base = tmp_path_factory.mktemp("runs")
    for name in shipped_configs():
        with open(config_path(name)) as fh:
            csv_name = json.load(fh).get("output", f"{name}.csv")
        dirs = (base / f"{name}_a", base / f"{name}_b")
        t0 = time.perf_counter()
        assert main(["run", config_path(name), "--jobs", "1", "--out", str(dirs[0])]) == 0
        seconds = time.perf_counter() - t0
        assert main(["run", config_path(name), "--jobs", "2", "--out", str(dirs[1])]) == 0
        out[name] = {"dirs": dirs, "csv": os.path.basename(csv_name), "seconds": seconds}
    if saved is not None:
        os.environ["EFFHAM_SEED"] = saved
    yield out
    shutil.rmtree(base, ignore_errors=True)
