"""
Moving load between the classical and quantum planes of one link.

Two conversions exist, both paid for from a stock of pre-shared entangled
pairs (ebits): teleporting a qubit consumes 1 ebit and adds 2 classical
bits, dense-coding 2 classical bits consumes 1 ebit and adds 1 qubit.
`balance_link` picks the integer conversion count that minimizes the worse
of the two plane utilizations, scanning the whole feasible range, so a
plain brute-force scan reproduces it exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np


class InfeasibleError(RuntimeError):
    """Even the best plan overflows both planes; the caller must queue.

    Carries the plan in `.plan` so callers can still inspect or apply it.
    """

    def __init__(self, message: str, plan: "TransferPlan"):
        super().__init__(message)
        self.plan = plan


class TeleportCost(NamedTuple):
    ebits: int
    cbits: int


class DenseCodeCost(NamedTuple):
    ebits: int
    qubits: int


@dataclass(frozen=True)
class LinkLoad:
    """Outstanding demand on one link, split by plane."""

    cbits: int
    qubits: int

    def __post_init__(self):
        if self.cbits < 0 or self.qubits < 0:
            raise ValueError("link load counts must be >= 0")


@dataclass(frozen=True)
class ConversionEvent:
    """One applied plan: what was converted and what the ledger kept."""

    qubits_teleported: int
    cbits_densecoded: int
    ebits_consumed: int
    ebits_remaining: int


@dataclass
class ResourceLedger:
    """Per-link ebit stock and per-round plane capacities.

    Ebits are only consumed, never replenished here; every debit appends a
    ConversionEvent to `events`.
    """

    ebits: int
    classical_capacity: int
    quantum_capacity: int
    events: list[ConversionEvent] = field(default_factory=list)

    def __post_init__(self):
        if self.ebits < 0:
            raise ValueError("ebits must be >= 0")
        if self.classical_capacity <= 0 or self.quantum_capacity <= 0:
            raise ValueError("capacities must be > 0")

    def apply(self, plan: "TransferPlan") -> ConversionEvent:
        """Debit the plan's ebits and log the conversion."""
        if plan.ebits_consumed > self.ebits:
            raise ValueError(
                f"plan needs {plan.ebits_consumed} ebits, ledger holds {self.ebits}"
            )
        self.ebits -= plan.ebits_consumed
        event = ConversionEvent(
            qubits_teleported=plan.qubits_teleported,
            cbits_densecoded=plan.cbits_densecoded,
            ebits_consumed=plan.ebits_consumed,
            ebits_remaining=self.ebits,
        )
        self.events.append(event)
        return event


@dataclass(frozen=True)
class TransferPlan:
    qubits_teleported: int
    cbits_densecoded: int
    resulting_load: LinkLoad
    ebits_consumed: int
    utilization: tuple[float, float]

    def __post_init__(self):
        if self.cbits_densecoded % 2:
            raise ValueError("dense coding moves classical bits in pairs")
        if self.ebits_consumed != self.qubits_teleported + self.cbits_densecoded // 2:
            raise ValueError("ebits_consumed does not match the conversion counts")

    @property
    def max_utilization(self) -> float:
        return max(self.utilization)


def teleport_cost(qubits: int) -> TeleportCost:
    """Resources to move `qubits` via teleportation: 1 ebit + 2 cbits each."""
    if qubits < 0:
        raise ValueError("qubit count must be >= 0")
    return TeleportCost(ebits=qubits, cbits=2 * qubits)


def dense_code_cost(cbits: int) -> DenseCodeCost:
    """Resources to move `cbits` via dense coding: 1 ebit + 1 qubit per 2 bits.

    An odd trailing bit still occupies a full ebit/qubit pair.
    """
    if cbits < 0:
        raise ValueError("cbit count must be >= 0")
    pairs = (cbits + 1) // 2
    return DenseCodeCost(ebits=pairs, qubits=pairs)


def _plan(load: LinkLoad, ledger: ResourceLedger, x: int, y: int) -> TransferPlan:
    resulting = LinkLoad(load.cbits + 2 * x - 2 * y, load.qubits - x + y)
    utilization = (
        resulting.cbits / ledger.classical_capacity,
        resulting.qubits / ledger.quantum_capacity,
    )
    return TransferPlan(
        qubits_teleported=x,
        cbits_densecoded=2 * y,
        resulting_load=resulting,
        ebits_consumed=x + y,
        utilization=utilization,
    )


def balance_link(load: LinkLoad, ledger: ResourceLedger) -> TransferPlan:
    """Min-max-utilization conversion plan for one link.

    Teleporting x qubits maps the load to (cbits + 2x, qubits - x); dense
    coding 2y classical bits maps it to (cbits - 2y, qubits + y). A plan
    converts in one direction only (x*y = 0) and is bounded by the load and
    the ledger's ebits. All feasible plans are scored and the lowest
    max(classical, quantum) utilization wins; ties fall to the plan with
    fewer ebits consumed, then to teleportation, then to the smaller count.

    Raises InfeasibleError when the winning plan still overflows both
    planes at once (conversion cannot help; queuing is the caller's call).
    An empty ledger is not an error: the zero-conversion plan is returned.
    """
    x_max = min(load.qubits, ledger.ebits)
    y_max = min(load.cbits // 2, ledger.ebits)

    xs = np.arange(x_max + 1)
    x_util = np.maximum(
        (load.cbits + 2 * xs) / ledger.classical_capacity,
        (load.qubits - xs) / ledger.quantum_capacity,
    )
    ys = np.arange(1, y_max + 1)
    y_util = np.maximum(
        (load.cbits - 2 * ys) / ledger.classical_capacity,
        (load.qubits + ys) / ledger.quantum_capacity,
    )

    best_x = int(np.argmin(x_util))  # argmin takes the first, so smaller x on ties
    x, y = best_x, 0
    if ys.size:
        best_y = int(np.argmin(y_util))
        if y_util[best_y] < x_util[best_x] or (
            y_util[best_y] == x_util[best_x] and ys[best_y] < best_x
        ):
            x, y = 0, int(ys[best_y])

    plan = _plan(load, ledger, x, y)
    over_classical = plan.resulting_load.cbits > ledger.classical_capacity
    over_quantum = plan.resulting_load.qubits > ledger.quantum_capacity
    if over_classical and over_quantum:
        raise InfeasibleError("load exceeds both plane capacities after balancing", plan)
    return plan
