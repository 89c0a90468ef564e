"""Experiment configuration: JSON loading, validation and sweep expansion."""

import copy
import json
import os

import numpy as np

from .errors import ConfigError
from .experiments import EXPERIMENTS, METHODS

SEED_ENV = "EFFHAM_SEED"
_KEYS = {"experiment", "model", "sweep", "methods", "dynamics", "output", "seed", "description"}


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return validate_config(cfg)


def _resolve(cfg, path):
    node = cfg
    parts = path.split(".")
    for p in parts[:-1]:
        if not isinstance(node, dict) or p not in node:
            raise ConfigError(f"sweep parameter {path!r} does not resolve")
        node = node[p]
    if not isinstance(node, dict):
        raise ConfigError(f"sweep parameter {path!r} does not resolve")
    return node, parts[-1]


def validate_config(cfg):
    """Check structure and fill defaults; returns a new dict."""
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = copy.deepcopy(cfg)
    exp = cfg.get("experiment")
    if exp not in EXPERIMENTS:
        raise ConfigError(f"experiment must be one of {sorted(EXPERIMENTS)}, got {exp!r}")
    if not isinstance(cfg.get("model"), dict):
        raise ConfigError("model block missing or not an object")
    methods = cfg.get("methods", ["la"])
    if not isinstance(methods, list) or not methods:
        raise ConfigError("methods must be a nonempty list")
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise ConfigError(f"unknown methods {bad}; allowed {list(METHODS)}")
    if len(set(methods)) != len(methods):
        raise ConfigError("methods must not repeat")
    cfg["methods"] = methods
    sweep = cfg.get("sweep")
    if not isinstance(sweep, dict):
        raise ConfigError("sweep block missing or not an object")
    for key in ("parameter", "start", "stop", "points"):
        if key not in sweep:
            raise ConfigError(f"sweep.{key} missing")
    if not isinstance(sweep["points"], int) or sweep["points"] < 1:
        raise ConfigError("sweep.points must be an integer >= 1")
    try:
        float(sweep["start"]), float(sweep["stop"])
    except (TypeError, ValueError):
        raise ConfigError("sweep.start and sweep.stop must be numbers") from None
    if not str(sweep["parameter"]).startswith("model."):
        raise ConfigError("sweep.parameter must be a path inside the model block")
    _resolve(cfg, sweep["parameter"])
    dyn = cfg.get("dynamics")
    if dyn is not None:
        if not isinstance(dyn, dict):
            raise ConfigError("dynamics must be an object")
        states = dyn.get("initial_states", [])
        if not isinstance(states, list):
            raise ConfigError("dynamics.initial_states must be a list")
        for k in ("T_ns", "steps"):
            if k in dyn and not float(dyn[k]) > 0:
                raise ConfigError(f"dynamics.{k} must be positive")
    seed = cfg.get("seed", 0)
    if not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ConfigError("seed must be an integer in [0, 2^64)")
    cfg["seed"] = seed
    cfg.setdefault("output", f"{exp}.csv")
    return cfg


def effective_seed(cfg, environ=None):
    env = os.environ if environ is None else environ
    raw = env.get(SEED_ENV)
    if raw is None or raw == "":
        return cfg["seed"]
    try:
        seed = int(raw, 0)
    except ValueError:
        raise ConfigError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if not 0 <= seed < 2**64:
        raise ConfigError(f"{SEED_ENV} must lie in [0, 2^64)")
    return seed


def sweep_values(cfg):
    s = cfg["sweep"]
    n = s["points"]
    if n == 1:
        return [float(s["start"])]
    return [float(x) for x in np.linspace(float(s["start"]), float(s["stop"]), n)]


def point_models(cfg):
    """One model block per sweep value, with the swept key substituted."""
    param = cfg["sweep"]["parameter"]
    out = []
    for v in sweep_values(cfg):
        c = copy.deepcopy(cfg)
        node, key = _resolve(c, param)
        node[key] = v
        out.append(c["model"])
    return out
