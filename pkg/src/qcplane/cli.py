"""
Command-line front end.

Subcommands: encode, join, scale, simulate, balance, selftest, run. Every
subcommand accepts --seed, --output and --format csv|json; outputs are
deterministic for fixed inputs and seed. Exit codes: 0 success, 2 parse
error, 3 validation error (diagnostic names the first invalid field),
4 I/O error, 5 infeasible balance.

When QCPLANE_OUTPUT_DIR is set, relative --output paths resolve under it
and it becomes the default report directory for `run`.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import runner
from .config import (
    ScenarioConfig,
    ScenarioParseError,
    ScenarioValidationError,
    load_scenario,
)
from .exchange import InfeasibleError, LinkLoad, ResourceLedger, balance_link
from .netsim import simulate_collection
from .qram import JoinedState, WeightMode, join_from_raw, qram_join
from .reporting import csv_text, json_text, write_atomic
from .scaling import TopologySpec, scaling_table
from .statevector import QuantumState, amplitude_encode

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4
EXIT_INFEASIBLE = 5

STATE_HEADER = ("index", "amplitude_real", "amplitude_imag", "probability")
JOIN_HEADER = ("index", "address", "data_index", "amplitude_real", "amplitude_imag", "probability")
SIMULATE_HEADER = (
    "mode",
    "leaf_propagation", "leaf_transmission", "leaf_queuing", "leaf_processing", "leaf_total",
    "mid_propagation", "mid_transmission", "mid_queuing", "mid_processing", "mid_total",
    "end_to_end", "energy_joules",
    "leaf_link_load", "controller_ingest", "mid_link_load",
    "hypervisor_ingest", "hypervisor_state_size", "unit",
)
BALANCE_CLI_HEADER = (
    "qubits_teleported", "cbits_densecoded", "ebits_consumed",
    "resulting_cbits", "resulting_qubits",
    "utilization_classical", "utilization_quantum",
)


class InputParseError(ValueError):
    """A vector input file could not be parsed."""


def read_vector(path: Path) -> list[float]:
    """One vector: a JSON array or one numeric value per line."""
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputParseError(f"{path}: {exc}") from exc
        if not isinstance(data, list) or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) for v in data
        ):
            raise InputParseError(f"{path}: expected a JSON array of numbers")
        return [float(v) for v in data]
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError as exc:
            raise InputParseError(f"{path}:{lineno}: not a number: {line!r}") from exc
    return values


def read_vector_set(path: Path) -> list[list[float]]:
    """Many vectors: a JSON array of arrays, or one whitespace-separated
    vector per line."""
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputParseError(f"{path}: {exc}") from exc
        if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
            raise InputParseError(f"{path}: expected a JSON array of arrays")
        out = []
        for row in data:
            if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in row):
                raise InputParseError(f"{path}: vector entries must be numbers")
            out.append([float(v) for v in row])
        return out
    vectors = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            vectors.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise InputParseError(f"{path}:{lineno}: not a numeric row: {line!r}") from exc
    return vectors


def resolve_output(path_str: str | None) -> Path | None:
    if path_str is None:
        return None
    path = Path(path_str)
    base = os.environ.get("QCPLANE_OUTPUT_DIR")
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_atomic(output, text)


def state_table(state: QuantumState) -> list[tuple]:
    probs = state.probabilities()
    return [
        (i, float(a.real), float(a.imag), float(p))
        for i, (a, p) in enumerate(zip(state.amplitudes, probs))
    ]


def state_json(state: QuantumState) -> dict:
    return {
        "num_qubits": state.num_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
        "probabilities": [float(p) for p in state.probabilities()],
    }


def cmd_encode(args) -> int:
    state = amplitude_encode(read_vector(Path(args.input)))
    if args.format == "json":
        text = json_text(state_json(state))
    else:
        text = csv_text(STATE_HEADER, state_table(state))
    emit(text, resolve_output(args.output))
    return EXIT_OK


def _joined_rows(joined: JoinedState) -> list[tuple]:
    block = 1 << joined.data_qubits
    rows = []
    for i, (a, p) in enumerate(zip(joined.state.amplitudes, joined.state.probabilities())):
        rows.append((i, i // block, i % block, float(a.real), float(a.imag), float(p)))
    return rows


def cmd_join(args) -> int:
    vectors = read_vector_set(Path(args.input))
    if args.weight_mode == "uniform":
        states = [amplitude_encode(v) for v in vectors]
        joined = qram_join(states, mode=WeightMode.UNIFORM)
    else:
        joined = join_from_raw(vectors)
    if args.format == "json":
        payload = state_json(joined.state)
        payload.update(
            {
                "num_sources": joined.num_sources,
                "data_qubits": joined.data_qubits,
                "address_qubits": joined.address_qubits,
                "weight_mode": joined.weight_mode.value,
            }
        )
        text = json_text(payload)
    else:
        text = csv_text(JOIN_HEADER, _joined_rows(joined))
    emit(text, resolve_output(args.output))
    return EXIT_OK


def _sweep_values(args) -> list[int]:
    if args.values:
        try:
            values = [int(tok) for tok in args.values.split(",")]
        except ValueError as exc:
            raise InputParseError(f"--values must be comma-separated integers: {exc}") from exc
        return values
    if args.start is None or args.stop is None:
        raise InputParseError("provide either --values or both --from and --to")
    if args.factor < 2:
        raise InputParseError("--factor must be >= 2")
    values, v = [], args.start
    while v <= args.stop:
        values.append(v)
        v *= args.factor
    if not values:
        raise InputParseError("--from/--to/--factor yield an empty sweep")
    return values


def cmd_scale(args) -> int:
    base = TopologySpec(
        num_controllers=args.n,
        switches_per_controller=args.k,
        params_per_switch=args.p,
        bits_per_param=args.b,
        shots=args.r,
    )
    rows = scaling_table(base, args.sweep, _sweep_values(args))
    if args.format == "json":
        text = json_text(
            [
                {
                    "sweep_param": r.sweep_param,
                    "sweep_value": r.sweep_value,
                    "classical_bits": r.classical_bits,
                    "quantum_qubits": r.quantum_qubits,
                    "ratio": r.ratio,
                }
                for r in rows
            ]
        )
    else:
        text = csv_text(
            runner.SWEEP_HEADER,
            [(r.sweep_param, r.sweep_value, r.classical_bits, r.quantum_qubits, r.ratio) for r in rows],
        )
    emit(text, resolve_output(args.output))
    return EXIT_OK


def _load_config(args) -> ScenarioConfig:
    cfg = load_scenario(args.config)
    if args.seed is not None:
        cfg = ScenarioConfig(
            topology=cfg.topology,
            links=cfg.links,
            energy=cfg.energy,
            ledgers=cfg.ledgers,
            sweep=cfg.sweep,
            seed=args.seed,
            mode=cfg.mode,
        )
    return cfg


def cmd_simulate(args) -> int:
    cfg = _load_config(args)
    mode = args.mode or cfg.mode
    results = [
        simulate_collection(cfg.topology, cfg.links, cfg.energy, m)
        for m in runner.modes_for(mode)
    ]
    if args.format == "json":
        text = json_text({r.mode: runner.result_json(r) for r in results})
    else:
        rows = []
        for r in results:
            leaf, mid = r.tier_latency["leaf"], r.tier_latency["mid"]
            rows.append(
                (
                    r.mode,
                    leaf.propagation, leaf.transmission, leaf.queuing, leaf.processing, leaf.total,
                    mid.propagation, mid.transmission, mid.queuing, mid.processing, mid.total,
                    r.end_to_end, r.energy,
                    r.loads.leaf_link_load, r.loads.controller_ingest, r.loads.mid_link_load,
                    r.loads.hypervisor_ingest, r.loads.hypervisor_state_size, r.loads.unit.value,
                )
            )
        text = csv_text(SIMULATE_HEADER, rows)
    emit(text, resolve_output(args.output))
    return EXIT_OK


def cmd_balance(args) -> int:
    load = LinkLoad(cbits=args.cbits, qubits=args.qubits)
    ledger = ResourceLedger(
        ebits=args.ebits,
        classical_capacity=args.classical_capacity,
        quantum_capacity=args.quantum_capacity,
    )
    plan = balance_link(load, ledger)
    row = (
        plan.qubits_teleported,
        plan.cbits_densecoded,
        plan.ebits_consumed,
        plan.resulting_load.cbits,
        plan.resulting_load.qubits,
        plan.utilization[0],
        plan.utilization[1],
    )
    if args.format == "json":
        text = json_text(dict(zip(BALANCE_CLI_HEADER, row)))
    else:
        text = csv_text(BALANCE_CLI_HEADER, [row])
    emit(text, resolve_output(args.output))
    return EXIT_OK


def cmd_selftest(args) -> int:
    checks = runner.selftest_checks()
    if args.format == "json":
        text = json_text(
            [
                {"check": c.name, "status": "PASS" if c.passed else "FAIL", "detail": c.detail}
                for c in checks
            ]
        )
    elif args.format == "csv":
        text = csv_text(
            ("check", "status", "detail"),
            [(c.name, "PASS" if c.passed else "FAIL", c.detail) for c in checks],
        )
    else:
        text = runner.selftest_text(checks)
    emit(text, resolve_output(args.output))
    return EXIT_OK if all(c.passed for c in checks) else 1


def cmd_run(args) -> int:
    cfg = _load_config(args)
    outdir = resolve_output(args.output)
    if outdir is None:
        outdir = Path(os.environ.get("QCPLANE_OUTPUT_DIR", "reports"))
    written = runner.run_scenario(cfg, outdir)
    for path in written:
        sys.stdout.write(f"{path}\n")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, default_format: str | None = "csv"):
    parser.add_argument("--seed", type=int, default=None, help="master seed (recorded in reports)")
    parser.add_argument("--output", default=None, help="output path (default: stdout)")
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default=default_format,
        help="report format",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcplane",
        description="Hybrid classical-quantum control-plane load, latency and energy accounting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="amplitude-encode a vector file into a state table")
    p.add_argument("--input", required=True, help="vector file: JSON array or one value per line")
    _add_common(p)
    p.set_defaults(handler=cmd_encode)

    p = sub.add_parser("join", help="join a vector set under an address register")
    p.add_argument("--input", required=True, help="JSON array of arrays, or one vector per line")
    p.add_argument(
        "--weight-mode",
        choices=("norm_proportional", "uniform"),
        default="norm_proportional",
        help="branch weighting",
    )
    _add_common(p)
    p.set_defaults(handler=cmd_join)

    p = sub.add_parser("scale", help="classical vs quantum hypervisor ingest across a sweep")
    p.add_argument("--sweep", required=True, help="parameter to sweep: N, K, P or R")
    p.add_argument("--from", dest="start", type=int, default=None, help="first swept value")
    p.add_argument("--to", dest="stop", type=int, default=None, help="last swept value (inclusive)")
    p.add_argument("--factor", type=int, default=2, help="geometric step (default 2)")
    p.add_argument("--values", default=None, help="explicit comma-separated values (overrides --from/--to)")
    p.add_argument("--n", type=int, default=1, help="controllers")
    p.add_argument("--k", type=int, default=1, help="switches per controller")
    p.add_argument("--p", type=int, default=2, help="parameters per switch")
    p.add_argument("--b", type=int, default=1, help="bits per parameter")
    p.add_argument("--r", type=int, default=1, help="repetitions")
    _add_common(p)
    p.set_defaults(handler=cmd_scale)

    p = sub.add_parser("simulate", help="one collection round from a scenario config")
    p.add_argument("--config", required=True, help="scenario JSON file")
    p.add_argument("--mode", choices=("classical", "quantum", "both"), default=None,
                   help="override the scenario's mode")
    _add_common(p)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("balance", help="min-max-utilization conversion plan for one link")
    p.add_argument("--cbits", type=int, required=True)
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--ebits", type=int, required=True)
    p.add_argument("--classical-capacity", type=int, required=True)
    p.add_argument("--quantum-capacity", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_balance)

    p = sub.add_parser("selftest", help="check the headline round arithmetic")
    _add_common(p, default_format=None)
    p.set_defaults(handler=cmd_selftest)

    p = sub.add_parser("run", help="run a full scenario and write report files")
    p.add_argument("config", help="scenario JSON file")
    _add_common(p)
    p.set_defaults(handler=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ScenarioParseError, InputParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioValidationError as exc:
        print(f"error: invalid field {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
