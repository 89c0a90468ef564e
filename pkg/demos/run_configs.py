"""Run every shipped config through the CLI and list the outputs.

    python3 demos/run_configs.py [out_dir]
"""

import pathlib
import sys
import time

from effham.cli import main

here = pathlib.Path(__file__).parent
out = sys.argv[1] if len(sys.argv) > 1 else str(here / "out")
for cfg in sorted((here / "configs").glob("*.json")):
    t0 = time.perf_counter()
    code = main(["run", str(cfg), "--out", out])
    print(f"  {cfg.stem}: exit {code}, {time.perf_counter() - t0:.1f} s")
