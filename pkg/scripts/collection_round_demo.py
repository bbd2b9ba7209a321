#!/usr/bin/env python3
"""Desk-scale walkthrough of one telemetry collection round.

Draws per-switch telemetry from seed-derived streams, amplitude-encodes it,
joins switch states per controller and controller states at the hypervisor,
verifies every branch is recoverable, then prints the load/latency/energy
comparison for the same topology. Everything is reproducible from --seed.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from qcplane.config import switch_rng
from qcplane.netsim import EnergyModel, LinkSpec, TierLinks, simulate_collection
from qcplane.qram import WeightMode, address_marginal, qram_join
from qcplane.scaling import TopologySpec, break_even_shots
from qcplane.statevector import amplitude_encode, inner_product


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--controllers", type=int, default=4)
    parser.add_argument("--switches", type=int, default=4)
    parser.add_argument("--params", type=int, default=8)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    topology = TopologySpec(
        num_controllers=args.controllers,
        switches_per_controller=args.switches,
        params_per_switch=args.params,
    )

    # Encode each switch's telemetry; streams derive from (seed, c, s) so
    # the round is reproducible regardless of iteration order.
    telemetry = {
        (c, s): switch_rng(args.seed, c, s).uniform(0.1, 10.0, size=args.params)
        for c in range(args.controllers)
        for s in range(args.switches)
    }
    switch_states = {key: amplitude_encode(v) for key, v in telemetry.items()}

    controller_joins = [
        qram_join(
            [switch_states[(c, s)] for s in range(args.switches)],
            weights=[float(np.linalg.norm(telemetry[(c, s)])) for s in range(args.switches)],
        )
        for c in range(args.controllers)
    ]
    hypervisor = qram_join(
        [j.state for j in controller_joins], mode=WeightMode.UNIFORM
    )

    print(f"topology: N={args.controllers} K={args.switches} P={args.params}")
    print(
        f"switch state: {switch_states[(0, 0)].num_qubits} qubits; "
        f"controller join: {controller_joins[0].state.num_qubits} qubits; "
        f"hypervisor join: {hypervisor.state.num_qubits} qubits"
    )

    worst = 1.0
    for c in range(args.controllers):
        for s in range(args.switches):
            branch = address_marginal(controller_joins[c], s)
            overlap = abs(inner_product(branch.conditional, switch_states[(c, s)]))
            worst = min(worst, overlap)
    print(f"worst branch recovery overlap: {worst:.15f}")

    links = TierLinks(
        leaf=LinkSpec(capacity=1e5, q_capacity=1e5, length=5e3, per_message_processing=1e-5),
        mid=LinkSpec(capacity=1e6, q_capacity=1e6, length=5e4, per_message_processing=1e-5),
    )
    energy = EnergyModel(
        per_bit_tx=1e-9,
        per_instruction=1e-10,
        instructions_per_bit_processed=1.0,
        bandwidth_scaling=1e6,
    )
    for mode in ("classical", "quantum"):
        result = simulate_collection(topology, links, energy, mode)
        loads = result.loads
        print(
            f"{mode:>9}: hypervisor ingest {loads.hypervisor_ingest} {loads.unit.value}, "
            f"end-to-end {result.end_to_end * 1e3:.3f} ms, energy {result.energy:.3e} J"
        )
    print(f"leaf break-even repetitions: {break_even_shots(topology)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
