"""Conversion between flat circuits and statically-addressed modules.

The circuit side indexes qubits and classical bits densely from zero;
the module side uses constant addresses, so the mapping is the identity
on indices: static qubit address N is circuit qubit N, static result
address N is classical bit N. Emitted modules record every classical
bit in ascending index order after the measurements, which fixes the
bitstring layout (bit 0 leftmost) used across the toolkit.
"""

from __future__ import annotations

from . import intrinsics
from .circuit import Gate, GateKind, Measure, QuantumCircuit, Reset
from .errors import ConversionError
from .ir import (BasicBlock, Call, CallArg, ConstFloat, ConstInt, FuncDef,
                 QUBIT, QirModule, RESULT, Ret, StaticAddr, DOUBLE, PTR,
                 ENTRY_POINT_ATTR, REQUIRED_QUBITS_ATTR,
                 REQUIRED_RESULTS_ATTR)
from .profile import Profile, validate_profile


def circuit_from_base_qir(module: QirModule) -> QuantumCircuit:
    """Flatten a base-form module into a circuit.

    Qubit counts come from the larger of the highest address used and
    the module's required-count attribute, so declared-but-idle qubits
    survive the conversion.
    """
    report = validate_profile(module)
    if report.profile is not Profile.BASE:
        first = report.violations[0] if report.violations else None
        detail = (f" ({first.reason} at {first.location})" if first
                  else f" (classified {report.profile.value})")
        raise ConversionError(
            f"only base-form modules convert to circuits{detail}")

    ops: list = []
    max_qubit = -1
    max_clbit = -1
    for block in module.entry.blocks:
        for instr in block.instructions:
            if not isinstance(instr, Call):
                raise ConversionError(
                    f"cannot convert {type(instr).__name__} instruction")
            spec = intrinsics.lookup(instr.callee)
            if spec is None:
                raise ConversionError(
                    f"@{instr.callee} is not a known intrinsic")
            qubits: list[int] = []
            results: list[int] = []
            params: list[float] = []
            for kind, arg in zip(spec.arg_kinds, instr.args):
                value = arg.value
                if kind == intrinsics.QUBIT_ARG:
                    if not isinstance(value, StaticAddr):
                        raise ConversionError(
                            f"@{instr.callee} uses a non-constant qubit")
                    qubits.append(value.index)
                    max_qubit = max(max_qubit, value.index)
                elif kind == intrinsics.RESULT_ARG:
                    if not isinstance(value, StaticAddr):
                        raise ConversionError(
                            f"@{instr.callee} uses a non-constant result")
                    results.append(value.index)
                    max_clbit = max(max_clbit, value.index)
                elif kind == intrinsics.ANGLE_ARG:
                    if isinstance(value, ConstFloat):
                        params.append(value.value)
                    elif isinstance(value, ConstInt):
                        params.append(float(value.value))
                    else:
                        raise ConversionError(
                            f"@{instr.callee} uses a non-constant angle")
            if spec.action == intrinsics.GATE:
                ops.append(Gate(spec.gate, tuple(params), tuple(qubits)))
            elif spec.action == intrinsics.MEASURE:
                ops.append(Measure(qubits[0], results[0]))
            elif spec.action == intrinsics.RESET:
                ops.append(Reset(qubits[0]))
            elif spec.action in intrinsics.BASE_RECORD_ACTIONS:
                pass  # recording is implicit on the circuit side
            else:
                raise ConversionError(
                    f"@{instr.callee} has no circuit equivalent")

    num_qubits = max(max_qubit + 1,
                     module.required_count(REQUIRED_QUBITS_ATTR) or 0)
    num_clbits = max(max_clbit + 1,
                     module.required_count(REQUIRED_RESULTS_ATTR) or 0)
    return QuantumCircuit(num_qubits, num_clbits, ops)


def circuit_to_base_qir(circuit: QuantumCircuit,
                        name: str = "main") -> QirModule:
    """Emit a statically-addressed module for a circuit.

    One intrinsic call per operation, followed by one recording call
    per classical bit in ascending order; the required-count attributes
    carry the circuit's sizes so the conversion is lossless even for
    idle qubits.
    """
    circuit.validate()
    instructions: list[Call] = []
    used: set[str] = set()

    def qubit_arg(index: int) -> CallArg:
        return CallArg(PTR, StaticAddr(index, QUBIT))

    def result_arg(index: int) -> CallArg:
        return CallArg(PTR, StaticAddr(index, RESULT))

    for op in circuit.ops:
        if isinstance(op, Gate):
            callee = intrinsics.gate_intrinsic_name(op.kind)
            args = [CallArg(DOUBLE, ConstFloat(p)) for p in op.params]
            args += [qubit_arg(q) for q in op.qubits]
        elif isinstance(op, Measure):
            callee = "__quantum__qis__mz__body"
            args = [qubit_arg(op.qubit), result_arg(op.clbit)]
        else:
            callee = "__quantum__qis__reset__body"
            args = [qubit_arg(op.qubit)]
        used.add(callee)
        instructions.append(Call(callee, args))

    record = "__quantum__rt__result_record_output"
    for clbit in range(circuit.num_clbits):
        used.add(record)
        instructions.append(Call(record, [result_arg(clbit),
                                          CallArg(PTR, StaticAddr(0))]))

    declarations = [intrinsics.declaration_for(n)
                    for n in intrinsics.intrinsic_table()
                    if n in used]
    fn = FuncDef(name, [BasicBlock("entry", [], instructions, Ret())],
                 attr_group=0)
    groups = {0: {ENTRY_POINT_ATTR: "",
                  REQUIRED_QUBITS_ATTR: str(circuit.num_qubits),
                  REQUIRED_RESULTS_ATTR: str(circuit.num_clbits)}}
    return QirModule("circuit", declarations, [fn], groups)
