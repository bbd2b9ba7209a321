#!/usr/bin/env python3
"""Emit the bits-vs-qubits hypervisor ingest table across a fleet sweep.

Writes a plot-ready CSV (default: stdout) comparing classical parameter
streaming against per-hop quantum joining as the number of switches per
controller doubles.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from qcplane.reporting import csv_text
from qcplane.runner import SWEEP_HEADER
from qcplane.scaling import TopologySpec, scaling_table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sweep", default="K", help="swept parameter: N, K, P or R")
    parser.add_argument("--start", type=int, default=2)
    parser.add_argument("--stop", type=int, default=1024)
    parser.add_argument("--n", type=int, default=1024, help="controllers")
    parser.add_argument("--k", type=int, default=1024, help="switches per controller")
    parser.add_argument("--p", type=int, default=2000, help="parameters per switch")
    parser.add_argument("--output", default=None, help="CSV path (default: stdout)")
    args = parser.parse_args()

    values, v = [], args.start
    while v <= args.stop:
        values.append(v)
        v *= 2
    base = TopologySpec(
        num_controllers=args.n, switches_per_controller=args.k, params_per_switch=args.p
    )
    rows = scaling_table(base, args.sweep, values)
    text = csv_text(
        SWEEP_HEADER,
        [(r.sweep_param, r.sweep_value, r.classical_bits, r.quantum_qubits, r.ratio) for r in rows],
    )
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {len(rows)} rows to {args.output}")
    else:
        sys.stdout.write(text)
    last = rows[-1]
    print(
        f"# at {last.sweep_param}={last.sweep_value}: {last.classical_bits} bits vs "
        f"{last.quantum_qubits} qubits (ratio {last.ratio:.1f})",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
