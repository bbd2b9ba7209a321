"""
Closed-form bit/qubit accounting for one hierarchical collection round.

Topology: N controllers, each fed by K switches, each switch holding P
telemetry parameters of b bits. Classical transport streams raw parameters
upward; quantum transport sends one ceil(log2 P)-qubit encoding per switch
and joins per hop, so link loads grow with the logarithm of the data they
summarize. R repeats the round shot-for-shot (fresh encodings each time),
scaling every transfer count but not the final aggregate state width.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable


class DegenerateEncodingError(ValueError):
    """Break-even undefined: one parameter encodes into zero qubits."""


class UnknownParameterError(ValueError):
    """Sweep over a name that is not one of N, K, P, R."""


class Unit(str, Enum):
    BITS = "bits"
    QUBITS = "qubits"


@dataclass(frozen=True)
class TopologySpec:
    """N x K x P collection hierarchy with per-parameter width and repetitions."""

    num_controllers: int
    switches_per_controller: int
    params_per_switch: int
    bits_per_param: int = 1
    shots: int = 1

    def __post_init__(self):
        for name in (
            "num_controllers",
            "switches_per_controller",
            "params_per_switch",
            "bits_per_param",
            "shots",
        ):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {value!r}")


@dataclass(frozen=True)
class LoadReport:
    """Per-link and aggregate transfer counts for one collection round.

    hypervisor_state_size is only meaningful for qubit rounds (the width of
    the fully joined state); it is 0 for bit rounds.
    """

    leaf_link_load: int
    controller_ingest: int
    mid_link_load: int
    hypervisor_ingest: int
    hypervisor_state_size: int
    unit: Unit


def qubits_for_parameters(params: int) -> int:
    """Qubits to amplitude-encode `params` values: ceil(log2 P), 0 for P=1."""
    if params < 1:
        raise ValueError("parameter count must be >= 1")
    return int(params - 1).bit_length()


def classical_loads(t: TopologySpec, reduction: float = 1.0) -> LoadReport:
    """Bit counts when every parameter is streamed upward unmodified.

    `reduction` models controllers compressing before forwarding; it scales
    the controller-to-hypervisor link only (ceiling to whole bits) and
    defaults to raw forwarding.
    """
    if not 0.0 < reduction <= 1.0:
        raise ValueError(f"reduction must be in (0, 1], got {reduction!r}")
    leaf = t.params_per_switch * t.bits_per_param
    mid = t.switches_per_controller * leaf
    if reduction != 1.0:
        mid = math.ceil(mid * reduction)
    return LoadReport(
        leaf_link_load=leaf,
        controller_ingest=t.switches_per_controller * leaf,
        mid_link_load=mid,
        hypervisor_ingest=t.num_controllers * mid,
        hypervisor_state_size=0,
        unit=Unit.BITS,
    )


def quantum_loads(t: TopologySpec) -> LoadReport:
    """Qubit counts when each hop joins what it received under an address.

    Per round: every switch sends m = ceil(log2 P) qubits; every controller
    joins K such states and sends m + ceil(log2 K) qubits; the hypervisor
    joins N of those into m + ceil(log2 K) + ceil(log2 N) qubits. R rounds
    multiply the transfers, never the final state width.
    """
    m = qubits_for_parameters(t.params_per_switch)
    a_k = qubits_for_parameters(t.switches_per_controller)
    a_n = qubits_for_parameters(t.num_controllers)
    r = t.shots
    return LoadReport(
        leaf_link_load=m * r,
        controller_ingest=t.switches_per_controller * m * r,
        mid_link_load=(m + a_k) * r,
        hypervisor_ingest=t.num_controllers * (m + a_k) * r,
        hypervisor_state_size=m + a_k + a_n,
        unit=Unit.QUBITS,
    )


def break_even_shots(t: TopologySpec) -> int:
    """Largest repetition count R with leaf qubit traffic <= leaf bit traffic.

    floor(P*b / ceil(log2 P)). Undefined for P=1, where the encoding is
    zero qubits wide and any R wins.
    """
    if t.params_per_switch == 1:
        raise DegenerateEncodingError(
            "params_per_switch=1 encodes into 0 qubits; break-even is unbounded"
        )
    leaf_bits = t.params_per_switch * t.bits_per_param
    return leaf_bits // qubits_for_parameters(t.params_per_switch)


_SWEEP_FIELDS = {
    "N": "num_controllers",
    "K": "switches_per_controller",
    "P": "params_per_switch",
    "R": "shots",
}


@dataclass(frozen=True)
class ScalingRow:
    sweep_param: str
    sweep_value: int
    classical_bits: int
    quantum_qubits: int
    ratio: float


def normalize_sweep_parameter(name: str) -> str:
    """Map a sweep name (short or field name, any case) to N/K/P/R."""
    upper = name.upper()
    if upper in _SWEEP_FIELDS:
        return upper
    lower = name.lower()
    for short, field in _SWEEP_FIELDS.items():
        if lower == field:
            return short
    raise UnknownParameterError(f"cannot sweep over {name!r}; pick one of N, K, P, R")


def scaling_table(
    t_base: TopologySpec, parameter: str, values: Iterable[int]
) -> list[ScalingRow]:
    """Classical vs quantum hypervisor ingest at each swept topology point."""
    short = normalize_sweep_parameter(parameter)
    field = _SWEEP_FIELDS[short]
    rows = []
    for value in values:
        t = replace(t_base, **{field: value})
        classical = classical_loads(t).hypervisor_ingest
        quantum = quantum_loads(t).hypervisor_ingest
        ratio = classical / quantum if quantum > 0 else math.inf
        rows.append(ScalingRow(short, value, classical, quantum, ratio))
    return rows
