"""Run configuration: built-in defaults, strict JSON loading, and dotted-path
overrides.

The shipped defaults describe the reference single-leg build: geometry and
mass properties of one leg plane (shared plates entered as one-third
shares), the fitted Mooney-Rivlin band coefficients, and the identified
Coulomb coefficient.  Set masses.mu_C to 0 for the undamped ideal.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from typing import Sequence

from .dynamics import MassModel, SimOptions
from .elastic import ElasticModel, GaussianBand, LinearSpring, MooneyRivlinBand
from .geometry import LinkageGeometry

DEFAULT_CONFIG = {
    "geometry": {
        "a": 6.82e-2,
        "c": 5.50e-2,
        "p": 0.70e-2,
        "q": 0.50e-2,
        "l0": 8.50e-2,
        "A0": 7.0e-6,
    },
    "masses": {
        "m1": 2.70e-3,
        "m2": 1.60e-3,
        "m3": 3.10e-3,
        "m4": 1.60e-3,
        "m5": 16.10e-3,
        "I1": 6.28e-7,
        "I2": 6.28e-7,
        "g": 9.81,
        "mu_C": 16.811e-3,
    },
    "elastic": {
        "model": "mooney_rivlin",
        "C1": 68.88e3,
        "C2": 73.61e3,
    },
    "sim": {
        "step": 1e-5,
        "t_max": 1.0,
        "event_tolerance": 1e-7,
        "theta0": 0.066,
    },
}

_ELASTIC_KEYS = {
    "linear": {"model", "k"},
    "gaussian": {"model", "C0", "T"},
    "mooney_rivlin": {"model", "C1", "C2"},
}


@dataclass(frozen=True)
class RunConfig:
    """Validated, typed view of one configuration dictionary."""

    geometry: LinkageGeometry
    masses: MassModel
    elastic: ElasticModel
    sim: SimOptions
    raw: dict


def default_config() -> dict:
    return copy.deepcopy(DEFAULT_CONFIG)


def load_config(path=None) -> dict:
    """Defaults merged with the JSON file at path (strict keys)."""
    cfg = default_config()
    if path is None:
        return cfg
    with open(path) as fh:
        user = json.load(fh)
    if not isinstance(user, dict):
        raise ValueError("config root must be a JSON object")
    for section, content in user.items():
        if section not in cfg:
            raise ValueError(f"unknown config section {section!r}")
        if not isinstance(content, dict):
            raise ValueError(f"config section {section!r} must be an object")
        if section == "elastic":
            cfg["elastic"] = dict(content)  # replaced wholesale, checked in build
            continue
        for key, value in content.items():
            if key not in cfg[section]:
                raise ValueError(f"unknown config key {section}.{key}")
            cfg[section][key] = value
    return cfg


def apply_overrides(cfg: dict, assignments: Sequence[str]) -> dict:
    """Apply repeated --set key.path=value assignments (JSON-parsed values)."""
    for assignment in assignments:
        if "=" not in assignment:
            raise ValueError(f"override {assignment!r} is not of the form key=value")
        path, _, raw_value = assignment.partition("=")
        keys = path.strip().split(".")
        try:
            value = json.loads(raw_value)
        except json.JSONDecodeError:
            value = raw_value.strip()
        node = cfg
        for key in keys[:-1]:
            if not isinstance(node, dict) or key not in node:
                raise ValueError(f"unknown config path {path!r}")
            node = node[key]
        if not isinstance(node, dict) or keys[-1] not in node:
            raise ValueError(f"unknown config path {path!r}")
        node[keys[-1]] = value
    return cfg


def build_config(cfg: dict) -> RunConfig:
    """Construct validated parameter objects from a config dictionary.

    The band rest length and cross section are taken from the geometry
    section, so the elastic section carries only the drive-law choice
    ("linear", "gaussian" or "mooney_rivlin") and its coefficients.
    """
    unknown = set(cfg) - set(DEFAULT_CONFIG)
    if unknown:
        raise ValueError(f"unknown config sections {sorted(unknown)}")
    for section in DEFAULT_CONFIG:
        if section not in cfg:
            raise ValueError(f"missing config section {section!r}")

    geometry = LinkageGeometry(**{k: float(v) for k, v in cfg["geometry"].items()})
    masses = MassModel(**{k: float(v) for k, v in cfg["masses"].items()})
    sim = SimOptions(**{k: float(v) for k, v in cfg["sim"].items()})

    elastic_cfg = cfg["elastic"]
    kind = elastic_cfg.get("model")
    if kind not in _ELASTIC_KEYS:
        raise ValueError(
            f"elastic.model must be one of {sorted(_ELASTIC_KEYS)}, got {kind!r}")
    extra = set(elastic_cfg) - _ELASTIC_KEYS[kind]
    if extra:
        raise ValueError(f"unknown elastic keys for {kind}: {sorted(extra)}")
    missing = _ELASTIC_KEYS[kind] - set(elastic_cfg)
    if missing:
        raise ValueError(f"missing elastic keys for {kind}: {sorted(missing)}")

    if kind == "linear":
        elastic = LinearSpring(k=float(elastic_cfg["k"]), l0=geometry.l0)
    elif kind == "gaussian":
        elastic = GaussianBand(C0=float(elastic_cfg["C0"]), T=float(elastic_cfg["T"]),
                               l0=geometry.l0, A0=geometry.A0)
    else:
        elastic = MooneyRivlinBand(C1=float(elastic_cfg["C1"]), C2=float(elastic_cfg["C2"]),
                                   l0=geometry.l0, A0=geometry.A0)

    return RunConfig(geometry=geometry, masses=masses, elastic=elastic,
                     sim=sim, raw=copy.deepcopy(cfg))
