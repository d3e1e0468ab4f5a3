"""Command-line front end: validate, transpile, unroll, and run programs.

Exit codes follow one discipline across commands: 0 success, 1 semantic
failure (unsupported profile, transform or runtime error), 2 parse
failure, 3 I/O failure. Results go to stdout; diagnostics go to stderr.

Input format is detected from the file extension (``.qasm`` is OpenQASM
2, anything else is textual QIR) and can be forced with
``--input-format``; ``--format`` selects the output rendering.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bridge import circuit_from_base_qir, circuit_to_base_qir
from .errors import (ConversionError, ExecutionError, ParseError,
                     QirError, TransformError)
from .interpreter import (DEFAULT_MAX_QUBITS, DEFAULT_STEP_LIMIT,
                          ExecOptions, interpret)
from .parser import parse_module
from .printer import print_module
from .profile import Profile, validate_profile
from .qasm2 import export_openqasm2, import_openqasm2
from .transforms import (DEFAULT_ITERATION_CAP, lower_to_base,
                         unroll_and_fold)


def _detect_format(path: str, override: str | None) -> str:
    if override:
        return override
    return "qasm2" if path.lower().endswith(".qasm") else "qir"


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_module(args):
    text = _read(args.path)
    if _detect_format(args.path, args.input_format) == "qasm2":
        return circuit_to_base_qir(import_openqasm2(text))
    return parse_module(text)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _cmd_validate(args) -> int:
    report = validate_profile(_load_module(args))
    if args.format == "json":
        payload = {
            "profile": report.profile.value,
            "violations": [{"location": v.location, "reason": v.reason}
                           for v in report.violations],
            "warnings": list(report.warnings),
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [report.profile.value]
        lines += [f"violation: {v.location}: {v.reason}"
                  for v in report.violations]
        lines += [f"warning: {w}" for w in report.warnings]
        _emit(args, "\n".join(lines) + "\n")
    return 0 if report.profile is not Profile.UNSUPPORTED else 1


def _cmd_transpile(args) -> int:
    module = _load_module(args)
    if validate_profile(module).profile is not Profile.BASE:
        module = lower_to_base(module, args.iteration_cap)
    if args.to == "qasm2":
        _emit(args, export_openqasm2(circuit_from_base_qir(module)))
    else:
        _emit(args, print_module(module))
    return 0


def _cmd_unroll(args) -> int:
    module = unroll_and_fold(_load_module(args), args.iteration_cap)
    _emit(args, print_module(module))
    return 0


def _cmd_run(args) -> int:
    module = _load_module(args)
    options = ExecOptions(max_qubits=args.max_qubits,
                          step_limit=args.step_limit)
    result = interpret(module, shots=args.shots, seed=args.seed,
                       options=options)
    if args.format == "json":
        _emit(args, result.to_json(include_memory=args.memory) + "\n")
    else:
        lines = [f"shots: {result.shots}", f"seed: {result.seed}",
                 "counts:"]
        lines += [f"  {key or '(empty)'} {result.counts[key]}"
                  for key in sorted(result.counts)]
        if args.memory:
            lines.append("memory:")
            lines += [f"  {bits or '(empty)'}" for bits in result.memory]
        _emit(args, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qirtk",
        description="Parse, validate, transform, transpile, and run "
                    "textual QIR and OpenQASM 2 programs.")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub):
        sub.add_argument("path", help="input file (.ll or .qasm)")
        sub.add_argument("--input-format", choices=["qir", "qasm2"],
                         help="override input format detection")
        sub.add_argument("--out", help="write output to a file "
                                       "instead of stdout")

    validate = commands.add_parser(
        "validate", help="classify a module's profile")
    common(validate)
    validate.add_argument("--format", choices=["json", "text"],
                          default="text")
    validate.set_defaults(handler=_cmd_validate)

    transpile = commands.add_parser(
        "transpile", help="convert between QIR and OpenQASM 2")
    common(transpile)
    transpile.add_argument("--to", choices=["qir-base", "qasm2"],
                           required=True, help="target format")
    transpile.add_argument("--iteration-cap", type=int,
                           default=DEFAULT_ITERATION_CAP)
    transpile.set_defaults(handler=_cmd_transpile)

    unroll = commands.add_parser(
        "unroll", help="unroll loops and fold constants")
    common(unroll)
    unroll.add_argument("--iteration-cap", type=int,
                        default=DEFAULT_ITERATION_CAP)
    unroll.set_defaults(handler=_cmd_unroll)

    run = commands.add_parser("run", help="execute a program and "
                                          "report measurement counts")
    common(run)
    run.add_argument("--shots", type=int, default=1024)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--format", choices=["json", "text"],
                     default="json")
    run.add_argument("--max-qubits", type=int,
                     default=DEFAULT_MAX_QUBITS)
    run.add_argument("--step-limit", type=int,
                     default=DEFAULT_STEP_LIMIT)
    run.add_argument("--memory", action="store_true",
                     help="include per-shot bitstrings in the output")
    run.set_defaults(handler=_cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "shots", 1) < 1:
        print("error: --shots must be at least 1", file=sys.stderr)
        return 1
    try:
        return args.handler(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except (TransformError, ConversionError, ExecutionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (QirError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
