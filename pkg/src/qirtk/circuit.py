"""Flat gate-level circuit representation.

A circuit is a qubit count, a classical bit count, and an ordered op list.
Output bitstrings print clbit 0 leftmost.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class GateKind(enum.Enum):
    """Supported gate set; values are the lowercase OpenQASM 2 names."""

    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cx"
    CZ = "cz"
    SWAP = "swap"
    CCX = "ccx"

    @property
    def num_qubits(self) -> int:
        return _ARITY[self][0]

    @property
    def num_params(self) -> int:
        return _ARITY[self][1]


_ARITY: dict[GateKind, tuple[int, int]] = {
    GateKind.H: (1, 0),
    GateKind.X: (1, 0),
    GateKind.Y: (1, 0),
    GateKind.Z: (1, 0),
    GateKind.S: (1, 0),
    GateKind.SDG: (1, 0),
    GateKind.T: (1, 0),
    GateKind.TDG: (1, 0),
    GateKind.RX: (1, 1),
    GateKind.RY: (1, 1),
    GateKind.RZ: (1, 1),
    GateKind.CNOT: (2, 0),
    GateKind.CZ: (2, 0),
    GateKind.SWAP: (2, 0),
    GateKind.CCX: (3, 0),
}


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    params: tuple[float, ...]
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class Measure:
    qubit: int
    clbit: int


@dataclass(frozen=True)
class Reset:
    qubit: int


CircuitOp = Gate | Measure | Reset


@dataclass
class QuantumCircuit:
    num_qubits: int
    num_clbits: int
    ops: list[CircuitOp] = field(default_factory=list)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Check counts and per-op arity/range; raises ValueError."""
        if self.num_qubits < 0 or self.num_clbits < 0:
            raise ValueError("negative register size")
        for op in self.ops:
            if isinstance(op, Gate):
                if len(op.qubits) != op.kind.num_qubits:
                    raise ValueError(
                        f"{op.kind.value} expects {op.kind.num_qubits} "
                        f"qubits, got {len(op.qubits)}")
                if len(op.params) != op.kind.num_params:
                    raise ValueError(
                        f"{op.kind.value} expects {op.kind.num_params} "
                        f"parameters, got {len(op.params)}")
                if len(set(op.qubits)) != len(op.qubits):
                    raise ValueError(
                        f"duplicate qubit operand in {op.kind.value}")
                self._check_qubits(op.qubits)
            elif isinstance(op, Measure):
                self._check_qubits((op.qubit,))
                if not 0 <= op.clbit < self.num_clbits:
                    raise ValueError(f"clbit {op.clbit} out of range")
            elif isinstance(op, Reset):
                self._check_qubits((op.qubit,))
            else:
                raise ValueError(f"unknown circuit op {op!r}")

    def _check_qubits(self, qubits: tuple[int, ...]) -> None:
        for q in qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"qubit {q} out of range")
