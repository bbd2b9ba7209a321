"""
Scenario files: JSON schema, strict validation, and seed derivation.

A scenario is one JSON object (see README for the full schema):

    {
      "topology": {"num_controllers": ..., "switches_per_controller": ...,
                   "params_per_switch": ..., "bits_per_param": 1, "shots": 1},
      "links": {"leaf": {...}, "mid": {...}},
      "energy": {...},
      "ledgers": {"leaf": {"ebits": ..., "classical_capacity": ...,
                           "quantum_capacity": ...}},   # optional
      "sweep": {"parameter": "K", "values": [...]},     # optional
      "seed": 7,
      "mode": "classical" | "quantum" | "both"
    }

Validation walks fields in a fixed order and reports the first offender by
its dotted path, so a bad file always produces the same diagnostic.

All randomness in a scenario flows from the single `seed`: the stream for
switch s of controller c is numpy's PCG64 seeded with
SeedSequence(seed, spawn_key=(c, s)). Streams are a pure function of
(seed, c, s), so per-switch sampling does not depend on execution order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exchange import ResourceLedger
from .netsim import EnergyModel, LinkSpec, TierLinks
from .scaling import TopologySpec, UnknownParameterError, normalize_sweep_parameter

MODES = ("classical", "quantum", "both")
LEDGER_LINKS = ("leaf", "mid")


class ScenarioParseError(ValueError):
    """The scenario file is not well-formed JSON (or not an object)."""


class ScenarioValidationError(ValueError):
    """A scenario field violates its contract; `field` is the dotted path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[int, ...]


@dataclass(frozen=True)
class ScenarioConfig:
    topology: TopologySpec
    links: TierLinks
    energy: EnergyModel
    ledgers: dict[str, ResourceLedger]
    sweep: SweepSpec | None
    seed: int
    mode: str


def switch_rng(seed: int, controller: int, switch: int) -> np.random.Generator:
    """Deterministic per-switch random stream derived from the scenario seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(controller, switch)))


def _require(obj: dict, field: str, path: str):
    if field not in obj:
        raise ScenarioValidationError(f"{path}{field}", "missing required field")
    return obj[field]


def _reject_unknown(obj: dict, allowed: tuple[str, ...], path: str):
    for key in obj:
        if key not in allowed:
            raise ScenarioValidationError(f"{path}{key}", "unknown field")


def _int_field(obj: dict, field: str, path: str, minimum: int = 1, default=None) -> int:
    if field not in obj:
        if default is not None:
            return default
        raise ScenarioValidationError(f"{path}{field}", "missing required field")
    value = obj[field]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScenarioValidationError(f"{path}{field}", f"must be an integer, got {value!r}")
    if value < minimum:
        raise ScenarioValidationError(f"{path}{field}", f"must be >= {minimum}, got {value}")
    return value


def _pos_number(obj: dict, field: str, path: str, default=None) -> float:
    if field not in obj and default is not None:
        return default
    value = _require(obj, field, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioValidationError(f"{path}{field}", f"must be a number, got {value!r}")
    if not value > 0:
        raise ScenarioValidationError(f"{path}{field}", f"must be > 0, got {value}")
    return float(value)


def _nonneg_number(obj: dict, field: str, path: str) -> float:
    value = _require(obj, field, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioValidationError(f"{path}{field}", f"must be a number, got {value!r}")
    if value < 0:
        raise ScenarioValidationError(f"{path}{field}", f"must be >= 0, got {value}")
    return float(value)


def _topology(obj) -> TopologySpec:
    if not isinstance(obj, dict):
        raise ScenarioValidationError("topology", "must be an object")
    path = "topology."
    _reject_unknown(
        obj,
        ("num_controllers", "switches_per_controller", "params_per_switch",
         "bits_per_param", "shots"),
        path,
    )
    return TopologySpec(
        num_controllers=_int_field(obj, "num_controllers", path),
        switches_per_controller=_int_field(obj, "switches_per_controller", path),
        params_per_switch=_int_field(obj, "params_per_switch", path),
        bits_per_param=_int_field(obj, "bits_per_param", path, default=1),
        shots=_int_field(obj, "shots", path, default=1),
    )


def _link(obj, path: str) -> LinkSpec:
    if not isinstance(obj, dict):
        raise ScenarioValidationError(path.rstrip("."), "must be an object")
    _reject_unknown(
        obj,
        ("capacity", "q_capacity", "length", "propagation_speed", "per_message_processing"),
        path,
    )
    return LinkSpec(
        capacity=_pos_number(obj, "capacity", path),
        q_capacity=_pos_number(obj, "q_capacity", path),
        length=_pos_number(obj, "length", path),
        propagation_speed=_pos_number(obj, "propagation_speed", path, default=2.0e8),
        per_message_processing=_pos_number(obj, "per_message_processing", path, default=1e-6),
    )


def _energy(obj) -> EnergyModel:
    if not isinstance(obj, dict):
        raise ScenarioValidationError("energy", "must be an object")
    path = "energy."
    _reject_unknown(
        obj,
        ("per_bit_tx", "per_instruction", "instructions_per_bit_processed",
         "bandwidth_scaling"),
        path,
    )
    return EnergyModel(
        per_bit_tx=_nonneg_number(obj, "per_bit_tx", path),
        per_instruction=_nonneg_number(obj, "per_instruction", path),
        instructions_per_bit_processed=_nonneg_number(
            obj, "instructions_per_bit_processed", path
        ),
        bandwidth_scaling=_nonneg_number(obj, "bandwidth_scaling", path),
    )


def _ledgers(obj) -> dict[str, ResourceLedger]:
    if not isinstance(obj, dict):
        raise ScenarioValidationError("ledgers", "must be an object")
    _reject_unknown(obj, LEDGER_LINKS, "ledgers.")
    ledgers = {}
    for link in LEDGER_LINKS:
        if link not in obj:
            continue
        entry = obj[link]
        path = f"ledgers.{link}."
        if not isinstance(entry, dict):
            raise ScenarioValidationError(f"ledgers.{link}", "must be an object")
        _reject_unknown(entry, ("ebits", "classical_capacity", "quantum_capacity"), path)
        ledgers[link] = ResourceLedger(
            ebits=_int_field(entry, "ebits", path, minimum=0),
            classical_capacity=_int_field(entry, "classical_capacity", path),
            quantum_capacity=_int_field(entry, "quantum_capacity", path),
        )
    return ledgers


def _sweep(obj) -> SweepSpec:
    if not isinstance(obj, dict):
        raise ScenarioValidationError("sweep", "must be an object")
    path = "sweep."
    _reject_unknown(obj, ("parameter", "values"), path)
    parameter = _require(obj, "parameter", path)
    if not isinstance(parameter, str):
        raise ScenarioValidationError("sweep.parameter", "must be a string")
    try:
        short = normalize_sweep_parameter(parameter)
    except UnknownParameterError as exc:
        raise ScenarioValidationError("sweep.parameter", str(exc)) from exc
    values = _require(obj, "values", path)
    if not isinstance(values, list) or not values:
        raise ScenarioValidationError("sweep.values", "must be a non-empty list")
    for i, v in enumerate(values):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ScenarioValidationError(
                f"sweep.values[{i}]", f"must be an integer >= 1, got {v!r}"
            )
    return SweepSpec(parameter=short, values=tuple(values))


def scenario_from_dict(data: dict) -> ScenarioConfig:
    """Validate a parsed scenario object, reporting the first bad field."""
    if not isinstance(data, dict):
        raise ScenarioParseError("scenario must be a JSON object")
    _reject_unknown(
        data, ("topology", "links", "energy", "ledgers", "sweep", "seed", "mode"), ""
    )
    topology = _topology(_require(data, "topology", ""))
    links_obj = _require(data, "links", "")
    if not isinstance(links_obj, dict):
        raise ScenarioValidationError("links", "must be an object")
    _reject_unknown(links_obj, ("leaf", "mid"), "links.")
    links = TierLinks(
        leaf=_link(_require(links_obj, "leaf", "links."), "links.leaf."),
        mid=_link(_require(links_obj, "mid", "links."), "links.mid."),
    )
    energy = _energy(_require(data, "energy", ""))
    ledgers = _ledgers(data["ledgers"]) if "ledgers" in data else {}
    sweep = _sweep(data["sweep"]) if "sweep" in data else None
    seed = data.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ScenarioValidationError("seed", "must be present and an integer")
    mode = data.get("mode")
    if mode not in MODES:
        raise ScenarioValidationError("mode", f"must be one of {MODES}, got {mode!r}")
    return ScenarioConfig(
        topology=topology,
        links=links,
        energy=energy,
        ledgers=ledgers,
        sweep=sweep,
        seed=seed,
        mode=mode,
    )


def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    """Inverse of scenario_from_dict: the result re-validates identically."""
    t, L, e = cfg.topology, cfg.links, cfg.energy
    data = {
        "topology": {
            "num_controllers": t.num_controllers,
            "switches_per_controller": t.switches_per_controller,
            "params_per_switch": t.params_per_switch,
            "bits_per_param": t.bits_per_param,
            "shots": t.shots,
        },
        "links": {
            tier: {
                "capacity": link.capacity,
                "q_capacity": link.q_capacity,
                "length": link.length,
                "propagation_speed": link.propagation_speed,
                "per_message_processing": link.per_message_processing,
            }
            for tier, link in (("leaf", L.leaf), ("mid", L.mid))
        },
        "energy": {
            "per_bit_tx": e.per_bit_tx,
            "per_instruction": e.per_instruction,
            "instructions_per_bit_processed": e.instructions_per_bit_processed,
            "bandwidth_scaling": e.bandwidth_scaling,
        },
        "seed": cfg.seed,
        "mode": cfg.mode,
    }
    if cfg.ledgers:
        data["ledgers"] = {
            link: {
                "ebits": ledger.ebits,
                "classical_capacity": ledger.classical_capacity,
                "quantum_capacity": ledger.quantum_capacity,
            }
            for link, ledger in cfg.ledgers.items()
        }
    if cfg.sweep is not None:
        data["sweep"] = {
            "parameter": cfg.sweep.parameter,
            "values": list(cfg.sweep.values),
        }
    return data


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Read and validate a scenario file.

    Raises OSError for unreadable paths, ScenarioParseError for malformed
    JSON, ScenarioValidationError for contract violations.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path}: {exc}") from exc
    return scenario_from_dict(data)
