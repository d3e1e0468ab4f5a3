"""Shared test helpers: a reference simulator and random program builders.

The dense reference simulator is deliberately independent of the
production backend: matrices are written out from their standard
definitions and lifted into the full space entry by entry with explicit
index arithmetic (no axis shuffling), so agreement between the two
implementations is a meaningful check rather than a tautology.
"""

from __future__ import annotations

import cmath
import math
import pathlib
import random

import numpy as np

from qirtk import Gate, GateKind, Measure, QuantumCircuit, Reset

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def corpus_path(name: str) -> pathlib.Path:
    return CORPUS / name


def corpus_text(name: str) -> str:
    return corpus_path(name).read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# dense brute-force reference simulator

_S2 = 1.0 / math.sqrt(2.0)


def _permutation(k: int, image) -> np.ndarray:
    m = np.zeros((1 << k, 1 << k), dtype=complex)
    for col in range(1 << k):
        m[image(col), col] = 1.0
    return m


def reference_matrix(kind: GateKind, params: tuple[float, ...]) -> np.ndarray:
    """Standard matrix for one gate, operand 0 on index bit 0."""
    if kind is GateKind.H:
        return np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex)
    if kind is GateKind.X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if kind is GateKind.Y:
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if kind is GateKind.Z:
        return np.diag([1.0, -1.0]).astype(complex)
    if kind is GateKind.S:
        return np.diag([1.0, 1.0j]).astype(complex)
    if kind is GateKind.SDG:
        return np.diag([1.0, -1.0j]).astype(complex)
    if kind is GateKind.T:
        return np.diag([1.0, cmath.exp(0.25j * math.pi)]).astype(complex)
    if kind is GateKind.TDG:
        return np.diag([1.0, cmath.exp(-0.25j * math.pi)]).astype(complex)
    if kind is GateKind.RX:
        (theta,) = params
        c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind is GateKind.RY:
        (theta,) = params
        c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        (theta,) = params
        return np.diag([cmath.exp(-0.5j * theta),
                        cmath.exp(0.5j * theta)]).astype(complex)
    if kind is GateKind.CNOT:
        # operand 0 controls, operand 1 flips
        return _permutation(2, lambda b: b ^ ((b & 1) << 1))
    if kind is GateKind.CZ:
        return np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
    if kind is GateKind.SWAP:
        return _permutation(2, lambda b: ((b & 1) << 1) | ((b >> 1) & 1))
    if kind is GateKind.CCX:
        # operands 0 and 1 control, operand 2 flips
        return _permutation(3, lambda b: b ^ (4 if (b & 3) == 3 else 0))
    raise AssertionError(f"no reference matrix for {kind}")


def embed(matrix: np.ndarray, targets: tuple[int, ...],
          num_qubits: int) -> np.ndarray:
    """Lift a k-qubit matrix to the full 2**n space, entry by entry.

    Matrix index bit j belongs to ``targets[j]``; every other qubit
    carries the identity. Amplitude index bit i belongs to qubit i.
    """
    k = len(targets)
    rest = [q for q in range(num_qubits) if q not in targets]
    full = np.zeros((1 << num_qubits, 1 << num_qubits), dtype=complex)

    def spread(bits: int, positions) -> int:
        out = 0
        for j, q in enumerate(positions):
            if (bits >> j) & 1:
                out |= 1 << q
        return out

    for spectator in range(1 << len(rest)):
        base = spread(spectator, rest)
        for gr in range(1 << k):
            row = base | spread(gr, targets)
            for gc in range(1 << k):
                full[row, base | spread(gc, targets)] = matrix[gr, gc]
    return full


def reference_amplitudes(circuit: QuantumCircuit) -> np.ndarray:
    """Amplitudes after the circuit's gates; measurements are ignored."""
    state = np.zeros(1 << circuit.num_qubits, dtype=complex)
    state[0] = 1.0
    for op in circuit.ops:
        if isinstance(op, Gate):
            state = embed(reference_matrix(op.kind, op.params),
                          op.qubits, circuit.num_qubits) @ state
    return state


# ---------------------------------------------------------------------------
# random circuits

def random_circuit(rng: random.Random, max_qubits: int = 5,
                   max_gates: int = 20, measured: str = "subset",
                   allow_resets: bool = False) -> QuantumCircuit:
    """Random circuit over the full gate table.

    ``measured`` selects the tail: "none" leaves the gates bare, "all"
    measures qubit i into clbit i, "subset" measures a shuffled subset
    into distinct clbits. Resets, when allowed, land before the tail so
    the result stays expressible as a straight-line program that ends in
    measurements.
    """
    n = rng.randint(1, max_qubits)
    ops: list = []
    for _ in range(rng.randint(0, max_gates)):
        if allow_resets and rng.random() < 0.1:
            ops.append(Reset(rng.randrange(n)))
            continue
        kind = rng.choice([k for k in GateKind if k.num_qubits <= n])
        qubits = tuple(rng.sample(range(n), kind.num_qubits))
        params = tuple(rng.uniform(-2.0 * math.pi, 2.0 * math.pi)
                       for _ in range(kind.num_params))
        ops.append(Gate(kind, params, qubits))
    if measured == "none":
        return QuantumCircuit(n, 0, ops)
    if measured == "all":
        ops += [Measure(q, q) for q in range(n)]
        return QuantumCircuit(n, n, ops)
    count = rng.randint(0, n)
    qubits = rng.sample(range(n), count)
    clbits = rng.sample(range(count), count)
    ops += [Measure(q, c) for q, c in zip(qubits, clbits)]
    return QuantumCircuit(n, count, ops)


# ---------------------------------------------------------------------------
# random textual modules (adaptive subset, no measurement feedback)

_GATE_DECLS = {
    "h": "declare void @__quantum__qis__h__body(ptr)",
    "x": "declare void @__quantum__qis__x__body(ptr)",
    "y": "declare void @__quantum__qis__y__body(ptr)",
    "z": "declare void @__quantum__qis__z__body(ptr)",
    "s": "declare void @__quantum__qis__s__body(ptr)",
    "t": "declare void @__quantum__qis__t__body(ptr)",
    "rx": "declare void @__quantum__qis__rx__body(double, ptr)",
    "rz": "declare void @__quantum__qis__rz__body(double, ptr)",
    "cnot": "declare void @__quantum__qis__cnot__body(ptr, ptr)",
    "cz": "declare void @__quantum__qis__cz__body(ptr, ptr)",
    "swap": "declare void @__quantum__qis__swap__body(ptr, ptr)",
    "reset": "declare void @__quantum__qis__reset__body(ptr)",
}

_RT_DECLS = [
    "declare ptr @__quantum__rt__qubit_allocate_array(i64)",
    "declare ptr @__quantum__rt__array_get_element_ptr_1d(ptr, i64)",
    "declare void @__quantum__rt__qubit_release_array(ptr)",
    "declare void @__quantum__qis__mz__body(ptr, ptr)",
    "declare void @__quantum__rt__result_record_output(ptr, ptr)",
]


def _result_addr(index: int) -> str:
    return "null" if index == 0 else f"inttoptr (i64 {index} to ptr)"


def random_adaptive_module(rng: random.Random) -> str:
    """Textual module in the adaptive subset with no measurement feedback.

    Mixes dynamic array allocation, element loads through a slot-held
    handle, an optional counted loop over a classical slot, resets,
    measurements interleaved with gates on yet-unmeasured qubits, output
    recording, and release. Loop bounds are small constants, so the
    module always lowers to the base profile.
    """
    n = rng.randint(1, 4)
    trips = rng.randint(2, 8)
    use_loop = rng.random() < 0.6
    counter = iter(range(100000))
    used: set[str] = set()
    lines: list[str] = []

    def fresh() -> str:
        return f"t{next(counter)}"

    def element(q: int) -> str:
        handle, ptr, elem = fresh(), fresh(), fresh()
        lines.append(f"  %{handle} = load ptr, ptr %qs")
        lines.append(f"  %{ptr} = call ptr "
                     f"@__quantum__rt__array_get_element_ptr_1d("
                     f"ptr %{handle}, i64 {q})")
        lines.append(f"  %{elem} = load ptr, ptr %{ptr}")
        return elem

    def emit_gate(allowed: list[int], allow_reset: bool) -> None:
        pool = ["h", "x", "y", "z", "s", "t", "rx", "rz"]
        if allow_reset:
            pool.append("reset")
        if len(allowed) >= 2:
            pool += ["cnot", "cz", "swap"]
        name = rng.choice(pool)
        used.add(name)
        if name in ("cnot", "cz", "swap"):
            a, b = rng.sample(allowed, 2)
            ea, eb = element(a), element(b)
            lines.append(f"  call void @__quantum__qis__{name}__body("
                         f"ptr %{ea}, ptr %{eb})")
        elif name in ("rx", "rz"):
            elem = element(rng.choice(allowed))
            angle = repr(rng.uniform(-3.0, 3.0))
            lines.append(f"  call void @__quantum__qis__{name}__body("
                         f"double {angle}, ptr %{elem})")
        else:
            elem = element(rng.choice(allowed))
            lines.append(f"  call void @__quantum__qis__{name}__body("
                         f"ptr %{elem})")

    lines.append("define void @main() #0 {")
    lines.append("entry:")
    lines.append("  %qs = alloca ptr")
    lines.append(f"  %arr = call ptr @__quantum__rt__qubit_allocate_array("
                 f"i64 {n})")
    lines.append("  store ptr %arr, ptr %qs")
    everyone = list(range(n))

    if use_loop:
        lines.append("  %i = alloca i64")
        lines.append("  store i64 0, ptr %i")
        lines.append("  br label %loop.head")
        lines.append("loop.head:")
        cur, cmp_name = fresh(), fresh()
        lines.append(f"  %{cur} = load i64, ptr %i")
        lines.append(f"  %{cmp_name} = icmp slt i64 %{cur}, {trips}")
        lines.append(f"  br i1 %{cmp_name}, label %loop.body, "
                     f"label %tail")
        lines.append("loop.body:")
        for _ in range(rng.randint(1, 3)):
            emit_gate(everyone, allow_reset=True)
        prev, nxt = fresh(), fresh()
        lines.append(f"  %{prev} = load i64, ptr %i")
        lines.append(f"  %{nxt} = add i64 %{prev}, 1")
        lines.append(f"  store i64 %{nxt}, ptr %i")
        lines.append("  br label %loop.head")
        lines.append("tail:")
    for _ in range(rng.randint(0, 4)):
        emit_gate(everyone, allow_reset=True)

    order = rng.sample(range(n), n)
    for position, qubit in enumerate(order):
        remaining = order[position + 1:]
        if remaining and rng.random() < 0.5:
            emit_gate(remaining, allow_reset=False)
        elem = element(qubit)
        lines.append(f"  call void @__quantum__qis__mz__body(ptr %{elem}, "
                     f"ptr {_result_addr(position)})")
        if rng.random() < 0.2:
            # readback whose value is never used; lowering prunes it
            lines.append(f"  %{fresh()} = call i1 "
                         f"@__quantum__rt__read_result("
                         f"ptr {_result_addr(position)})")
            used.add("read_result")
    for position in range(n):
        lines.append(f"  call void @__quantum__rt__result_record_output("
                     f"ptr {_result_addr(position)}, ptr null)")
    handle = fresh()
    lines.append(f"  %{handle} = load ptr, ptr %qs")
    lines.append(f"  call void @__quantum__rt__qubit_release_array("
                 f"ptr %{handle})")
    lines.append("  ret void")
    lines.append("}")

    decls = list(_RT_DECLS)
    decls += [_GATE_DECLS[name] for name in sorted(used)
              if name in _GATE_DECLS]
    if "read_result" in used:
        decls.append("declare i1 @__quantum__rt__read_result(ptr)")
    return "\n".join(decls + [""] + lines +
                     ['attributes #0 = { "entry_point" }', ""])
