"""
Scenario execution and the built-in arithmetic selftest.

run_scenario computes everything first (loads, latency, energy, balancing,
optional sweep) and only then writes report files, each atomically, so an
error of any kind leaves the output directory untouched. Identical
(config, seed) pairs produce byte-identical reports: nothing here reads
clocks, hostnames, or unseeded randomness.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import reporting
from .config import ScenarioConfig, scenario_to_dict
from .exchange import ConversionEvent, LinkLoad, TransferPlan, balance_link
from .netsim import CollectionResult, simulate_collection
from .scaling import (
    TopologySpec,
    break_even_shots,
    classical_loads,
    quantum_loads,
    qubits_for_parameters,
    scaling_table,
)

LOADS_HEADER = (
    "mode",
    "leaf_link_load",
    "controller_ingest",
    "mid_link_load",
    "hypervisor_ingest",
    "hypervisor_state_size",
    "unit",
)
LATENCY_HEADER = ("mode", "tier", "propagation", "transmission", "queuing", "processing", "total")
ENERGY_HEADER = ("mode", "symbols_to_hypervisor", "instructions", "available_bandwidth", "energy_joules")
BALANCE_HEADER = (
    "link",
    "cbits_demand",
    "qubits_demand",
    "qubits_teleported",
    "cbits_densecoded",
    "ebits_consumed",
    "ebits_remaining",
    "resulting_cbits",
    "resulting_qubits",
    "utilization_classical",
    "utilization_quantum",
)
SWEEP_HEADER = ("sweep_param", "sweep_value", "classical_bits", "quantum_qubits", "ratio")


def modes_for(mode: str) -> tuple[str, ...]:
    return ("classical", "quantum") if mode == "both" else (mode,)


def loads_row(result: CollectionResult) -> tuple:
    loads = result.loads
    return (
        result.mode,
        loads.leaf_link_load,
        loads.controller_ingest,
        loads.mid_link_load,
        loads.hypervisor_ingest,
        loads.hypervisor_state_size,
        loads.unit.value,
    )


@dataclass(frozen=True)
class BalanceOutcome:
    link: str
    demand: LinkLoad
    plan: TransferPlan
    event: ConversionEvent


def run_balancing(cfg: ScenarioConfig) -> list[BalanceOutcome]:
    """Balance each configured link against its hybrid round demand.

    Demand per link is the classical bit load and the quantum qubit load
    that one round places on it, independent of the scenario's reporting
    mode (a balanced link carries both planes).
    """
    classical = classical_loads(cfg.topology)
    quantum = quantum_loads(cfg.topology)
    demands = {
        "leaf": LinkLoad(cbits=classical.leaf_link_load, qubits=quantum.leaf_link_load),
        "mid": LinkLoad(cbits=classical.mid_link_load, qubits=quantum.mid_link_load),
    }
    outcomes = []
    for link in ("leaf", "mid"):
        if link not in cfg.ledgers:
            continue
        ledger = cfg.ledgers[link]
        plan = balance_link(demands[link], ledger)
        event = ledger.apply(plan)
        outcomes.append(BalanceOutcome(link, demands[link], plan, event))
    return outcomes


def result_json(result: CollectionResult) -> dict:
    return {
        "loads": {
            "leaf_link_load": result.loads.leaf_link_load,
            "controller_ingest": result.loads.controller_ingest,
            "mid_link_load": result.loads.mid_link_load,
            "hypervisor_ingest": result.loads.hypervisor_ingest,
            "hypervisor_state_size": result.loads.hypervisor_state_size,
            "unit": result.loads.unit.value,
        },
        "latency": {
            tier: {
                "propagation": b.propagation,
                "transmission": b.transmission,
                "queuing": b.queuing,
                "processing": b.processing,
                "total": b.total,
            }
            for tier, b in result.tier_latency.items()
        },
        "end_to_end": result.end_to_end,
        "energy_joules": result.energy,
    }


def build_report_files(cfg: ScenarioConfig) -> dict[str, str]:
    """All report payloads for a validated scenario, keyed by file name."""
    results = [
        simulate_collection(cfg.topology, cfg.links, cfg.energy, mode)
        for mode in modes_for(cfg.mode)
    ]
    balance = run_balancing(cfg)
    sweep_rows = (
        scaling_table(cfg.topology, cfg.sweep.parameter, cfg.sweep.values)
        if cfg.sweep is not None
        else None
    )

    files: dict[str, str] = {}
    files["loads.csv"] = reporting.csv_text(LOADS_HEADER, [loads_row(r) for r in results])
    files["latency.csv"] = reporting.csv_text(
        LATENCY_HEADER,
        [
            (r.mode, tier, b.propagation, b.transmission, b.queuing, b.processing, b.total)
            for r in results
            for tier, b in r.tier_latency.items()
        ],
    )
    files["energy.csv"] = reporting.csv_text(
        ENERGY_HEADER,
        [
            (
                r.mode,
                r.loads.hypervisor_ingest,
                cfg.energy.instructions_per_bit_processed * r.loads.hypervisor_ingest,
                cfg.links.mid.rate(r.loads.unit),
                r.energy,
            )
            for r in results
        ],
    )
    if balance:
        files["balance.csv"] = reporting.csv_text(
            BALANCE_HEADER,
            [
                (
                    o.link,
                    o.demand.cbits,
                    o.demand.qubits,
                    o.plan.qubits_teleported,
                    o.plan.cbits_densecoded,
                    o.plan.ebits_consumed,
                    o.event.ebits_remaining,
                    o.plan.resulting_load.cbits,
                    o.plan.resulting_load.qubits,
                    o.plan.utilization[0],
                    o.plan.utilization[1],
                )
                for o in balance
            ],
        )
    if sweep_rows is not None:
        files["sweep.csv"] = reporting.csv_text(
            SWEEP_HEADER,
            [
                (row.sweep_param, row.sweep_value, row.classical_bits, row.quantum_qubits, row.ratio)
                for row in sweep_rows
            ],
        )

    report = {
        "scenario": scenario_to_dict(cfg),
        "seed": cfg.seed,
        "results": {r.mode: result_json(r) for r in results},
        "balance": {
            o.link: {
                "demand": {"cbits": o.demand.cbits, "qubits": o.demand.qubits},
                "qubits_teleported": o.plan.qubits_teleported,
                "cbits_densecoded": o.plan.cbits_densecoded,
                "ebits_consumed": o.plan.ebits_consumed,
                "ebits_remaining": o.event.ebits_remaining,
                "resulting_load": {
                    "cbits": o.plan.resulting_load.cbits,
                    "qubits": o.plan.resulting_load.qubits,
                },
                "utilization": {
                    "classical": o.plan.utilization[0],
                    "quantum": o.plan.utilization[1],
                },
            }
            for o in balance
        },
        "sweep": None
        if sweep_rows is None
        else [
            {
                "sweep_param": row.sweep_param,
                "sweep_value": row.sweep_value,
                "classical_bits": row.classical_bits,
                "quantum_qubits": row.quantum_qubits,
                "ratio": row.ratio,
            }
            for row in sweep_rows
        ],
    }
    files["report.json"] = reporting.json_text(report)
    return files


def run_scenario(cfg: ScenarioConfig, outdir: str | Path) -> list[Path]:
    """Execute a scenario and write its report files into `outdir`."""
    files = build_report_files(cfg)
    outdir = Path(outdir)
    written = []
    for name in sorted(files):
        path = outdir / name
        reporting.write_atomic(path, files[name])
        written.append(path)
    return written


@dataclass(frozen=True)
class SelftestCheck:
    name: str
    passed: bool
    detail: str


def _reference_topology(shots: int = 1) -> TopologySpec:
    return TopologySpec(
        num_controllers=1024,
        switches_per_controller=1024,
        params_per_switch=2000,
        bits_per_param=1,
        shots=shots,
    )


def selftest_checks() -> list[SelftestCheck]:
    """The headline collection-round arithmetic; all checks are exact."""
    checks = []

    width = qubits_for_parameters(2000)
    checks.append(
        SelftestCheck(
            "parameter_encoding_width",
            width == 11,
            f"2000 parameters encode into {width} qubits (expected 11)",
        )
    )

    q = quantum_loads(_reference_topology())
    checks.append(
        SelftestCheck(
            "hypervisor_state_width",
            q.hypervisor_state_size == 31,
            f"joined state at the hypervisor occupies {q.hypervisor_state_size} qubits (expected 31)",
        )
    )

    c = classical_loads(_reference_topology())
    totals_ok = (
        q.controller_ingest == 11 * 1024
        and q.hypervisor_ingest == 21 * 1024
        and c.mid_link_load == 2000 * 1024
        and c.hypervisor_ingest == 2000 * 1024 * 1024
    )
    checks.append(
        SelftestCheck(
            "round_transfer_totals",
            totals_ok,
            f"quantum {q.controller_ingest}+{q.hypervisor_ingest} qubits (expected 11264+21504); "
            f"classical {c.mid_link_load}+{c.hypervisor_ingest} bits (expected 2048000+2097152000)",
        )
    )

    q100 = quantum_loads(_reference_topology(shots=100))
    repetition_ok = (
        q100.leaf_link_load == 100 * q.leaf_link_load
        and q100.controller_ingest == 100 * q.controller_ingest
        and q100.mid_link_load == 100 * q.mid_link_load
        and q100.hypervisor_ingest == 100 * q.hypervisor_ingest
        and q100.hypervisor_state_size == q.hypervisor_state_size
    )
    checks.append(
        SelftestCheck(
            "repetition_scaling",
            repetition_ok,
            f"100 rounds multiply every transfer count by 100; state stays {q100.hypervisor_state_size} qubits",
        )
    )

    t = _reference_topology()
    be = break_even_shots(t)
    width = qubits_for_parameters(t.params_per_switch)
    leaf_bits = t.params_per_switch * t.bits_per_param
    scan_max = max(r for r in range(1, leaf_bits + 1) if width * r <= leaf_bits)
    checks.append(
        SelftestCheck(
            "leaf_break_even",
            be == 181 and scan_max == be,
            f"largest R with {width}*R <= {leaf_bits} is {be} (expected 181; "
            "approx 200 when rounded to the nearest hundred)",
        )
    )
    return checks


def selftest_text(checks: list[SelftestCheck]) -> str:
    lines = [
        f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in checks
    ]
    verdict = "PASS" if all(c.passed for c in checks) else "FAIL"
    lines.append(f"selftest: {verdict} ({sum(c.passed for c in checks)}/{len(checks)} checks)")
    return "\n".join(lines) + "\n"
