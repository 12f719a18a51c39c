"""
Experiment configuration for the command line.

A config is a JSON object::

    {
      "preset": "qubit-theta", "theta": 1.0471975511965976,
      "state": {"ket": {"dim": 2, "amplitudes": [[re, im], ...]}}
             | {"density": {"dim": 2, "entries": [...]}}
             | {"amplitudes": [[re, im], ...]}
             | {"file": "state.json"},
      "measurement": {"basis": [<ket>, ...]}
                   | {"computational": 3}
                   | {"ambient_dim": 8, "index_sets": [[0, 1, 2], [3, 4, 5, 6, 7]]}
                   | {"grid": {"x_min": -8, "x_max": 8, "n_points": 1024},
                      "edges": [0.0],
                      "wavefunction": {"kind": "gaussian", "center": 0, "width": 1}},
      "n_samples": 100000, "seed": 7, "workers": 1
    }

Values are resolved as command-line flags > config file > preset defaults.
With a grid measurement the wavefunction *is* the state, so ``state`` must
be omitted.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .effective import PartitionProjectors, build_effective_measurement, discretize_position
from .errors import EBRError
from .generators import GENERATOR_ORDERING
from .hidden import Experiment, default_seed
from .operators import DensityOperator, Ket, basis_ket, ket_from_amplitudes


class ConfigError(EBRError):
    """Invalid configuration; the message names the offending field."""


def _preset_qubit_theta(params):
    theta = float(params.get("theta", math.pi / 3))
    return {
        "state": {"amplitudes": [[math.cos(theta / 2), 0.0], [math.sin(theta / 2), 0.0]]},
        "measurement": {"computational": 2},
    }


def _preset_born_weights(params):
    w = params.get("weights", [0.5, 0.3, 0.2])
    if any(x < 0 for x in w):
        raise ConfigError("preset born-weights: 'weights' must be nonnegative")
    return {
        "state": {"amplitudes": [[math.sqrt(x), 0.0] for x in w]},
        "measurement": {"computational": len(w)},
    }


def _preset_mixed(params):
    n = int(params.get("n", 3))
    return {
        "state": {"density": DensityOperator(np.eye(n) / n).to_json()},
        "measurement": {"computational": n},
    }


PRESETS = {
    "qubit-theta": _preset_qubit_theta,
    "born-weights": _preset_born_weights,
    "maximally-mixed": _preset_mixed,
}

_KNOWN = {"preset", "theta", "weights", "n", "state", "measurement", "n_samples", "seed", "workers",
          "out", "records", "no_states", "format"}


def load_json_file(path) -> dict:
    """Read a JSON file, turning decode errors into line/column diagnostics."""
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def parse_json_arg(text: str, what: str):
    """Parse an inline JSON argument, or a file when it starts with '@'."""
    if text.startswith("@"):
        return load_json_file(text[1:])
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{what}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def resolve(file_cfg: dict | None, flags: dict) -> dict:
    """Merge preset defaults, config file and flags (highest precedence)."""
    file_cfg = dict(file_cfg or {})
    unknown = set(file_cfg) - _KNOWN
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
    flags = {k: v for k, v in flags.items() if v is not None}
    merged = {**file_cfg, **flags}
    base = {}
    preset = merged.get("preset")
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"preset: unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        base = PRESETS[preset](merged)
    out = {**base, **merged}
    out.setdefault("n_samples", 100_000)
    out.setdefault("workers", 1)
    if out.get("seed") is None:
        out["seed"] = default_seed()
    for key in ("n_samples", "workers"):
        if not isinstance(out[key], int) or out[key] < 1:
            raise ConfigError(f"{key}: must be a positive integer, got {out[key]!r}")
    if not isinstance(out["seed"], int) or not 0 <= out["seed"] < 2**64:
        raise ConfigError(f"seed: must be an unsigned 64-bit integer, got {out['seed']!r}")
    if "measurement" not in out:
        raise ConfigError("measurement: missing (give a preset or a measurement spec)")
    return out


_NOT_HASHED = {"out", "records", "format", "no_states", "workers"}


def config_hash(cfg: dict) -> str:
    """Short digest of everything that determines the sampled outcomes."""
    relevant = {k: v for k, v in cfg.items() if k not in _NOT_HASHED}
    canon = json.dumps(relevant, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _field(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ConfigError(f"{where}: missing field '{key}'")
    return obj[key]


def parse_state(spec) -> Ket | DensityOperator:
    if not isinstance(spec, dict):
        raise ConfigError("state: expected an object")
    try:
        if "file" in spec:
            return parse_state(load_json_file(spec["file"]))
        if "ket" in spec:
            return Ket.from_json(spec["ket"])
        if "amplitudes" in spec:
            return Ket.from_json(spec)
        if "density" in spec:
            return DensityOperator.from_json(spec["density"])
        if "entries" in spec:
            return DensityOperator.from_json(spec)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"state: malformed ({e})") from None
    raise ConfigError("state: expected one of 'ket', 'amplitudes', 'density', 'entries', 'file'")


WAVEFUNCTIONS = {
    "gaussian": lambda x, center=0.0, width=1.0: np.exp(-((x - center) ** 2) / (2 * width**2)),
    "uniform": lambda x, lo=0.0, hi=1.0: ((x >= lo) & (x < hi)).astype(float),
}


def _wavefunction(spec):
    if "samples" in spec:
        return np.array([complex(re, im) for re, im in spec["samples"]])
    kind = spec.get("kind")
    if kind not in WAVEFUNCTIONS:
        raise ConfigError(f"measurement.wavefunction.kind: unknown {kind!r}; choose from {sorted(WAVEFUNCTIONS)}")
    params = {k: float(v) for k, v in spec.items() if k != "kind"}
    return lambda x: WAVEFUNCTIONS[kind](x, **params)


def parse_partition(spec):
    """Partition spec -> (PartitionProjectors, grid ket or None)."""
    if "index_sets" in spec:
        d = _field(spec, "ambient_dim", "measurement")
        return PartitionProjectors.from_index_sets(int(d), spec["index_sets"]), None
    grid = _field(spec, "grid", "measurement")
    edges = _field(spec, "edges", "measurement")
    wf = _wavefunction(_field(spec, "wavefunction", "measurement"))
    ket, parts, _ = discretize_position(
        float(_field(grid, "x_min", "measurement.grid")),
        float(_field(grid, "x_max", "measurement.grid")),
        int(_field(grid, "n_points", "measurement.grid")),
        wf,
        edges,
    )
    return parts, ket


@dataclass
class Resolved:
    """A config turned into objects: what to measure and how to report it."""

    experiment: Experiment
    n_total: int                # outcomes of the full measurement
    surviving: tuple            # which of them the simplex represents
    config: dict
    hash: str


def build(cfg: dict) -> Resolved:
    """Turn a resolved config dict into an :class:`Experiment`."""
    m = cfg["measurement"]
    if not isinstance(m, dict):
        raise ConfigError("measurement: expected an object")
    h = config_hash(cfg)
    meta = {"config_hash": h, "ordering": GENERATOR_ORDERING}

    if "index_sets" in m or "grid" in m:
        parts, grid_ket = parse_partition(m)
        if grid_ket is not None:
            if "state" in cfg:
                raise ConfigError("state: must be omitted for grid measurements (the wavefunction is the state)")
            psi = grid_ket
        else:
            psi = parse_state(_field(cfg, "state", "config"))
            if not isinstance(psi, Ket):
                raise ConfigError("state: partition measurements need a pure state (ket)")
        em = build_effective_measurement(psi, parts)
        meta["surviving"] = list(em.surviving)
        exp = Experiment(psi, em.outcome_kets, cfg["n_samples"], cfg["seed"], cfg["workers"], meta)
        return Resolved(exp, parts.n_outcomes, em.surviving, cfg, h)

    state = parse_state(_field(cfg, "state", "config"))
    if "computational" in m:
        n = int(m["computational"])
        if n < 2 or n > state.dim:
            raise ConfigError(f"measurement.computational: need 2 <= n <= {state.dim}, got {n}")
        kets = [basis_ket(state.dim, i) for i in range(n)]
    elif "basis" in m:
        try:
            kets = [Ket.from_json(k) if isinstance(k, dict) else ket_from_amplitudes(k) for k in m["basis"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"measurement.basis: malformed ({e})") from None
    else:
        raise ConfigError("measurement: expected 'computational', 'basis', 'index_sets' or 'grid'")
    exp = Experiment(state, kets, cfg["n_samples"], cfg["seed"], cfg["workers"], meta)
    return Resolved(exp, len(kets), tuple(range(len(kets))), cfg, h)
