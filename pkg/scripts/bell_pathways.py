#!/usr/bin/env python3
"""Run the Bell pair through its three front doors and compare results.

The same program exists in the corpus three times: as an OpenQASM 2
listing, as a dynamically-allocating IR module, and as a static base
profile module. This script bridges or lowers each one to the runtime and
checks that a fixed seed produces identical shots everywhere.
"""

import argparse
import pathlib
import sys

from qirtk import (circuit_to_base_qir, import_openqasm2, interpret,
                   lower_to_base, parse_module)

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def load_pathways():
    qasm = circuit_to_base_qir(import_openqasm2(
        (CORPUS / "bell.qasm").read_text()))
    dynamic = lower_to_base(parse_module(
        (CORPUS / "bell_dynamic.ll").read_text()))
    static = parse_module((CORPUS / "bell_static.ll").read_text())
    return [("openqasm bridge", qasm), ("lowered dynamic ir", dynamic),
            ("static ir", static)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shots", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    results = []
    for label, module in load_pathways():
        result = interpret(module, shots=args.shots, seed=args.seed)
        results.append((label, result))
        counts = ", ".join(f"{key}: {result.counts[key]}"
                           for key in sorted(result.counts))
        print(f"{label:20s} {counts}")

    reference = results[0][1].memory
    for label, result in results[1:]:
        if result.memory != reference:
            print(f"mismatch: {label} disagrees shot-for-shot",
                  file=sys.stderr)
            return 1
    print(f"all pathways agree on every one of {args.shots} shots")
    return 0


if __name__ == "__main__":
    sys.exit(main())
