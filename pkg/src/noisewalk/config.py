"""Experiment configuration: schema, validation, and defaults.

Validation is strict and exhaustive: unknown fields anywhere are rejected,
and every offending field is reported in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PROTOCOLS = ("rb", "rb-longwalk", "walk-scan", "gst")

#: Detuning magnitudes delta = Delta/Omega for the default sweep,
#: Delta in {75, 500, 1000, 1400} Hz at Omega = 22.5 kHz.
DEFAULT_DETUNING_SWEEP = tuple(d / 22500.0 for d in (75.0, 500.0, 1000.0, 1400.0))


class ConfigError(ValueError):
    """Carries every validation failure found in a config."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid config:\n" + "\n".join(f"  - {e}" for e in self.errors))


@dataclass
class ExperimentConfig:
    protocol: str
    seed: int
    params: dict
    thresholds: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "seed": self.seed,
            "params": self.params,
            "thresholds": self.thresholds,
        }


_TOP_FIELDS = {"protocol", "seed", "params", "thresholds", "out"}

_RB_FIELDS = {
    "j_values": list,
    "sequences_per_j": int,
    "noise": dict,
    "n_realizations": int,
    "shots": (int, type(None)),
    "model": str,
    "kappa_fit": (int, float),
    "fit_kappa": bool,
    "reuse_dc_noise_across_sequences": bool,
    "kappa_meas": (int, float),
    "multiplier": (int, float),
}
_RB_REQUIRED = {"j_values", "sequences_per_j", "noise", "n_realizations"}
_RB_DEFAULTS = {
    "shots": None,
    "model": "concurrent",
    "kappa_fit": 0.0,
    "fit_kappa": False,
    "reuse_dc_noise_across_sequences": True,
    "kappa_meas": 0.0,
}

_NOISE_FIELDS = {"kind": str, "sigma": (int, float), "seed": int}

_WALK_FIELDS = {
    "j": int,
    "count": int,
    "axis": str,
    "multiplier": (int, float),
    "weights": str,
}
_WALK_REQUIRED = {"j", "count"}
_WALK_DEFAULTS = {"axis": "z", "multiplier": 2.0, "weights": "unit"}

_GST_FIELDS = {
    "model": str,
    "magnitudes": list,
    "shots": (int, type(None)),
    "extended": bool,
    "gauge": str,
    "w_spam": (int, float),
    "cross_check": bool,
}
_GST_REQUIRED = {"model"}
_GST_DEFAULTS = {
    "magnitudes": list(DEFAULT_DETUNING_SWEEP),
    "shots": None,
    "extended": False,
    "gauge": "tp-then-unitary",
    "w_spam": 1e-3,
    "cross_check": True,
}


def _check_fields(block: dict, allowed: dict, required: set, where: str, errors: list):
    for key in block:
        if key not in allowed:
            errors.append(f"{where}: unknown field {key!r}")
    for key in required:
        if key not in block:
            errors.append(f"{where}: missing required field {key!r}")
    for key, typ in allowed.items():
        if key in block and not isinstance(block[key], typ):
            errors.append(f"{where}.{key}: expected {typ}, got {type(block[key]).__name__}")


def _validate_noise(noise: dict, errors: list):
    _check_fields(noise, _NOISE_FIELDS, set(_NOISE_FIELDS), "params.noise", errors)
    kind = noise.get("kind")
    if isinstance(kind, str) and kind not in ("dc", "quasi-dc", "white"):
        errors.append(f"params.noise.kind: unknown kind {kind!r}")
    if isinstance(noise.get("sigma"), (int, float)) and noise["sigma"] < 0:
        errors.append("params.noise.sigma: must be non-negative")


def validate_config(raw: dict) -> ExperimentConfig:
    """Validate a raw config dict; raises ConfigError listing every issue."""
    errors: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError(["config must be a JSON object"])
    for key in raw:
        if key not in _TOP_FIELDS:
            errors.append(f"unknown top-level field {key!r}")
    protocol = raw.get("protocol")
    if protocol not in PROTOCOLS:
        errors.append(f"protocol: expected one of {PROTOCOLS}, got {protocol!r}")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        errors.append("seed: expected an integer")
    params = raw.get("params", {})
    if not isinstance(params, dict):
        errors.append("params: expected an object")
        params = {}
    thresholds = raw.get("thresholds", [])
    if not isinstance(thresholds, list):
        errors.append("thresholds: expected a list")
        thresholds = []
    for k, t in enumerate(thresholds):
        if not isinstance(t, dict) or "metric" not in t:
            errors.append(f"thresholds[{k}]: expected an object with a 'metric' field")
        elif not ({"min", "max"} & set(t)):
            errors.append(f"thresholds[{k}]: needs 'min' and/or 'max'")

    if protocol in ("rb", "rb-longwalk"):
        _check_fields(params, _RB_FIELDS, _RB_REQUIRED, "params", errors)
        if protocol == "rb-longwalk" and "multiplier" not in params:
            errors.append("params: rb-longwalk requires 'multiplier'")
        if isinstance(params.get("noise"), dict):
            _validate_noise(params["noise"], errors)
        if isinstance(params.get("model"), str) and params["model"] not in (
            "concurrent",
            "interleaved",
        ):
            errors.append(f"params.model: unknown model {params['model']!r}")
        merged = {**_RB_DEFAULTS, **params}
    elif protocol == "walk-scan":
        _check_fields(params, _WALK_FIELDS, _WALK_REQUIRED, "params", errors)
        if isinstance(params.get("axis"), str) and params["axis"] not in ("x", "y", "z"):
            errors.append(f"params.axis: expected x, y or z, got {params['axis']!r}")
        merged = {**_WALK_DEFAULTS, **params}
    elif protocol == "gst":
        _check_fields(params, _GST_FIELDS, _GST_REQUIRED, "params", errors)
        if isinstance(params.get("model"), str) and params["model"] not in (
            "none",
            "overrotation",
            "detuning",
        ):
            errors.append(f"params.model: unknown model {params['model']!r}")
        if isinstance(params.get("gauge"), str) and params["gauge"] not in (
            "none",
            "unitary",
            "tp-then-unitary",
        ):
            errors.append(f"params.gauge: unknown gauge group {params['gauge']!r}")
        merged = {**_GST_DEFAULTS, **params}
    else:
        merged = params

    if errors:
        raise ConfigError(errors)
    return ExperimentConfig(protocol, seed, merged, thresholds)
