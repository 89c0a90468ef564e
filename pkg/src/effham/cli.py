"""Command line entry point: ``effham run | validate | oracle``."""

import argparse
import csv
import dataclasses
import io
import json
import os
import platform
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import scipy

from . import __version__
from .config import effective_seed, load_config, point_models
from .errors import ConfigError, EffHamError
from .experiments import EXPERIMENTS
from .oracles import ORACLES


def _evaluate(job):
    name, model, methods, dyn, seed, index = job
    row = EXPERIMENTS[name].point(model, methods, dyn, seed=seed, index=index)
    return row.cells, row.warnings


def format_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    x = float(v)
    if not np.isfinite(x):
        return ""
    # fold negative zero so reruns cannot differ by a sign bit
    return format(x + 0.0, ".12g")


def run_experiment(cfg, jobs=1):
    """Evaluate every sweep point; returns (columns, rows of strings)."""
    exp = EXPERIMENTS[cfg["experiment"]]
    seed = effective_seed(cfg)
    methods, dyn = cfg["methods"], cfg.get("dynamics")
    models = point_models(cfg)
    param = cfg["sweep"]["parameter"].split(".", 1)[1]
    columns = [param] + list(exp.columns(methods, dyn)) + ["warnings"]
    work = [(exp.name, m, methods, dyn, seed, i) for i, m in enumerate(models)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate, work))
    else:
        results = [_evaluate(w) for w in work]
    rows = []
    for model, (cells, warns) in zip(models, results):
        unknown = set(cells) - set(columns)
        if unknown:
            raise RuntimeError(f"experiment produced undeclared columns {sorted(unknown)}")
        line = [format_cell(model[param])]
        line += [format_cell(cells.get(c)) for c in columns[1:-1]]
        line.append("; ".join(warns))
        rows.append(line)
    return columns, rows, seed


def write_outputs(cfg, columns, rows, seed, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, os.path.basename(cfg["output"]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())
    meta = {
        "config": cfg,
        "seed": seed,
        "rng": "numpy Philox4x64-10, key = seed, point i uses jumped(i)",
        "columns": columns,
        "rows": len(rows),
        "rows_with_warnings": sum(1 for r in rows if r[-1]),
        "versions": {
            "effham": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
    }
    json_path = os.path.splitext(csv_path)[0] + ".json"
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, json_path


def _parse_value(text):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse value {text!r}") from None


def _jsonable(x):
    if dataclasses.is_dataclass(x):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(x).items()}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    return x


def cmd_oracle(name, pairs):
    if name not in ORACLES:
        raise ConfigError(f"unknown oracle {name!r}; available: {', '.join(sorted(ORACLES))}")
    kwargs = {}
    for p in pairs:
        if "=" not in p:
            raise ConfigError(f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        kwargs[k] = _parse_value(v)
    try:
        out = ORACLES[name](**kwargs)
    except TypeError as exc:
        raise ConfigError(f"{name}: {exc}") from None
    print(json.dumps(_jsonable(out), indent=2, sort_keys=True))


def build_parser():
    ap = argparse.ArgumentParser(prog="effham", description="Effective Hamiltonian toolkit")
    ap.add_argument("--version", action="version", version=f"effham {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run an experiment config")
    r.add_argument("config")
    r.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    r.add_argument("--out", default=".")
    v = sub.add_parser("validate", help="check a config without running it")
    v.add_argument("config")
    o = sub.add_parser("oracle", help="evaluate a closed-form oracle")
    o.add_argument("name")
    o.add_argument("params", nargs="*", metavar="key=value")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            cfg = load_config(args.config)
            n = cfg["sweep"]["points"]
            print(f"ok: {cfg['experiment']}, {n} point{'s' if n != 1 else ''}, "
                  f"methods {','.join(cfg['methods'])}")
            return 0
        if args.command == "oracle":
            cmd_oracle(args.name, args.params)
            return 0
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        cfg = load_config(args.config)
        columns, rows, seed = run_experiment(cfg, jobs=args.jobs)
        csv_path, _ = write_outputs(cfg, columns, rows, seed, args.out)
        print(f"wrote {len(rows)} rows to {csv_path}")
        return 0
    except (ConfigError, EffHamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
