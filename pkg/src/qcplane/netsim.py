"""
Deterministic latency and energy model for one collection round.

Per link, latency decomposes into propagation (distance over signal
speed), transmission (symbols over capacity), queuing (backlog drained at
the same capacity), and a flat per-message processing charge. A round is
synchronized: all K switches fire at once, so the j-th message a
controller ingests waits behind j-1 equal messages in FIFO order, and the
round's end-to-end time is the last leaf arrival plus the last mid-tier
arrival. Energy at the hypervisor scales with symbols ingested and
instructions spent, and inversely with the bandwidth available on the
feeding links.

Quantum transport uses its own symbol rate (q_capacity); by default
scenarios keep it equal to the classical rate so any latency difference
comes from the load alone, not from technology constants.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .scaling import (
    LoadReport,
    TopologySpec,
    Unit,
    classical_loads,
    quantum_loads,
)

PROPAGATION_SPEED_DEFAULT = 2.0e8  # m/s, signal speed in fiber


class ZeroBandwidthError(ValueError):
    """Energy estimate requested with no available bandwidth."""


@dataclass(frozen=True)
class LinkSpec:
    """One link tier: symbol rates, span, and per-message processing time."""

    capacity: float  # bits/second
    q_capacity: float  # qubits/second
    length: float  # meters
    propagation_speed: float = PROPAGATION_SPEED_DEFAULT
    per_message_processing: float = 1e-6  # seconds

    def __post_init__(self):
        for name in (
            "capacity",
            "q_capacity",
            "length",
            "propagation_speed",
            "per_message_processing",
        ):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be > 0, got {value!r}")

    def rate(self, unit: Unit) -> float:
        return self.capacity if unit is Unit.BITS else self.q_capacity


@dataclass(frozen=True)
class LatencyBreakdown:
    propagation: float
    transmission: float
    queuing: float
    processing: float
    total: float

    def __post_init__(self):
        parts = (self.propagation, self.transmission, self.queuing, self.processing)
        if any(p < 0 for p in parts):
            raise ValueError("latency components must be >= 0")
        if abs(self.total - sum(parts)) > 1e-12 * max(1.0, abs(self.total)):
            raise ValueError("total does not equal the sum of components")


@dataclass(frozen=True)
class EnergyModel:
    """Transmission-plus-compute energy at the hypervisor."""

    per_bit_tx: float  # joules per symbol sent, at reference bandwidth
    per_instruction: float  # joules
    instructions_per_bit_processed: float
    bandwidth_scaling: float  # reference bandwidth, bits/second

    def __post_init__(self):
        for name in (
            "per_bit_tx",
            "per_instruction",
            "instructions_per_bit_processed",
            "bandwidth_scaling",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class TierLinks:
    leaf: LinkSpec
    mid: LinkSpec


@dataclass(frozen=True)
class CollectionResult:
    """Round outcome: loads, the slowest message per tier, and totals."""

    mode: str
    loads: LoadReport
    tier_latency: dict[str, LatencyBreakdown]
    end_to_end: float
    energy: float


def link_latency(
    message_size: float,
    link: LinkSpec,
    backlog: float = 0.0,
    unit: Unit = Unit.BITS,
) -> LatencyBreakdown:
    """Delay decomposition for one message of `message_size` symbols.

    `backlog` counts symbols already queued ahead; both it and the message
    drain at the link's rate for the chosen symbol kind.
    """
    if message_size < 0 or backlog < 0:
        raise ValueError("message_size and backlog must be >= 0")
    rate = link.rate(unit)
    propagation = link.length / link.propagation_speed
    transmission = message_size / rate
    queuing = backlog / rate
    processing = link.per_message_processing
    return LatencyBreakdown(
        propagation=propagation,
        transmission=transmission,
        queuing=queuing,
        processing=processing,
        total=propagation + transmission + queuing + processing,
    )


def energy_estimate(
    symbols_sent: float,
    instructions: float,
    available_bandwidth: float,
    model: EnergyModel,
) -> float:
    """Joules for ingesting `symbols_sent` and computing on them.

    The transmission term scales with symbols and inversely with the
    available bandwidth (relative to the model's reference bandwidth); the
    compute term is linear in instructions.
    """
    if symbols_sent < 0 or instructions < 0:
        raise ValueError("symbols_sent and instructions must be >= 0")
    if available_bandwidth <= 0:
        raise ZeroBandwidthError("available bandwidth must be > 0")
    tx = model.per_bit_tx * symbols_sent * (model.bandwidth_scaling / available_bandwidth)
    return tx + model.per_instruction * instructions


def round_latency(
    loads: LoadReport, links: TierLinks, fan_in_leaf: int, fan_in_mid: int
) -> tuple[dict[str, LatencyBreakdown], float]:
    """Worst-case per-tier breakdowns and their end-to-end sum.

    With synchronized arrivals the last message at each hop queues behind
    fan_in - 1 peers, so the worst leaf message plus the worst mid message
    bound the round.
    """
    leaf = link_latency(
        loads.leaf_link_load,
        links.leaf,
        backlog=(fan_in_leaf - 1) * loads.leaf_link_load,
        unit=loads.unit,
    )
    mid = link_latency(
        loads.mid_link_load,
        links.mid,
        backlog=(fan_in_mid - 1) * loads.mid_link_load,
        unit=loads.unit,
    )
    return {"leaf": leaf, "mid": mid}, leaf.total + mid.total


def simulate_collection(
    topology: TopologySpec,
    links: TierLinks,
    energy: EnergyModel,
    mode: str,
    shots: int | None = None,
) -> CollectionResult:
    """One full collection round under classical or quantum transport.

    `shots` overrides the topology's repetition count when given. The
    energy charge uses the hypervisor's total ingest, a derived
    instruction count (instructions_per_bit_processed per ingested
    symbol), and the mid-tier rate for the active symbol kind as the
    available bandwidth.
    """
    if mode not in ("classical", "quantum"):
        raise ValueError(f"mode must be 'classical' or 'quantum', got {mode!r}")
    t = topology if shots is None else replace(topology, shots=shots)
    loads = classical_loads(t) if mode == "classical" else quantum_loads(t)
    tier_latency, end_to_end = round_latency(
        loads, links, t.switches_per_controller, t.num_controllers
    )
    joules = energy_estimate(
        loads.hypervisor_ingest,
        energy.instructions_per_bit_processed * loads.hypervisor_ingest,
        links.mid.rate(loads.unit),
        energy,
    )
    return CollectionResult(
        mode=mode,
        loads=loads,
        tier_latency=tier_latency,
        end_to_end=end_to_end,
        energy=joules,
    )
