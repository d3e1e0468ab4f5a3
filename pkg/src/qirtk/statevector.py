"""Dense statevector backend.

Conventions, shared with the gate-matrix table below:
  * amplitude index bit i holds the basis state of qubit i, so qubit 0 is
    the least-significant bit of the flat index
  * a k-qubit gate matrix is indexed the same way over its operand list:
    matrix index bit j belongs to operand j (operand 0 least significant)
  * RZ(theta) = diag(exp(-i theta/2), exp(+i theta/2)); RX and RY follow
    the same exp(-i theta/2 P) convention

``StateVector`` methods mutate in place; the module-level ``apply_gate``
is the pure variant used where value semantics read better.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .circuit import GateKind

_SQRT1_2 = 1.0 / math.sqrt(2.0)

_FIXED_1Q: dict[GateKind, np.ndarray] = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT1_2,
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]],
                         dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, cmath.exp(-1j * math.pi / 4)]],
                           dtype=complex),
}

# two-qubit matrices with operand 0 on index bit 0
_CNOT = np.array([
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
], dtype=complex)

_CZ = np.diag([1, 1, 1, -1]).astype(complex)

_SWAP = np.array([
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
], dtype=complex)

_CCX = np.eye(8, dtype=complex)
_CCX[[3, 7], [3, 7]] = 0
_CCX[3, 7] = 1
_CCX[7, 3] = 1


def gate_matrix(kind: GateKind, params: tuple[float, ...]) -> np.ndarray:
    """Unitary for a gate application, in the operand-bit convention."""
    if len(params) != kind.num_params:
        raise ValueError(f"{kind.value} expects {kind.num_params} "
                         f"parameters, got {len(params)}")
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind]
    if kind is GateKind.RX:
        (theta,) = params
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind is GateKind.RY:
        (theta,) = params
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        (theta,) = params
        return np.array([[cmath.exp(-1j * theta / 2), 0],
                         [0, cmath.exp(1j * theta / 2)]], dtype=complex)
    if kind is GateKind.CNOT:
        return _CNOT
    if kind is GateKind.CZ:
        return _CZ
    if kind is GateKind.SWAP:
        return _SWAP
    if kind is GateKind.CCX:
        return _CCX
    raise ValueError(f"no matrix for gate {kind!r}")


class StateVector:
    """Mutable dense state over ``num_qubits`` qubits."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int = 0):
        if num_qubits < 0:
            raise ValueError("negative qubit count")
        self.num_qubits = num_qubits
        self.amplitudes = np.zeros(1 << num_qubits, dtype=complex)
        self.amplitudes[0] = 1.0

    def copy(self) -> "StateVector":
        out = StateVector.__new__(StateVector)
        out.num_qubits = self.num_qubits
        out.amplitudes = self.amplitudes.copy()
        return out

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def grow(self) -> int:
        """Append one qubit in state |0>; returns its index."""
        index = self.num_qubits
        self.amplitudes = np.concatenate(
            [self.amplitudes, np.zeros_like(self.amplitudes)])
        self.num_qubits += 1
        return index

    # ------------------------------------------------------------------

    def _axis(self, qubit: int) -> int:
        # numpy axis 0 is the most significant index bit
        return self.num_qubits - 1 - qubit

    def apply_matrix(self, matrix: np.ndarray,
                     targets: tuple[int, ...]) -> None:
        k = len(targets)
        if matrix.shape != (1 << k, 1 << k):
            raise ValueError("matrix size does not match target count")
        if len(set(targets)) != k:
            raise ValueError("duplicate target qubit")
        for q in targets:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"qubit {q} out of range")
        n = self.num_qubits
        psi = self.amplitudes.reshape([2] * n)
        # front axes ordered so the flattened group index has operand j
        # at bit j (operand k-1 lands on the most significant position)
        src = [self._axis(targets[k - 1 - j]) for j in range(k)]
        dst = list(range(k))
        psi = np.moveaxis(psi, src, dst)
        shape = psi.shape
        psi = psi.reshape(1 << k, -1)
        psi = matrix @ psi
        psi = psi.reshape(shape)
        psi = np.moveaxis(psi, dst, src)
        self.amplitudes = np.ascontiguousarray(psi).reshape(-1)

    def apply_gate_inplace(self, kind: GateKind, params: tuple[float, ...],
                           targets: tuple[int, ...]) -> None:
        self.apply_matrix(gate_matrix(kind, params), targets)

    # ------------------------------------------------------------------

    def prob_one(self, qubit: int) -> float:
        """Probability of measuring ``qubit`` as 1."""
        if not 0 <= qubit < self.num_qubits:
            raise ValueError(f"qubit {qubit} out of range")
        psi = self.amplitudes.reshape([2] * self.num_qubits)
        slice_one = np.take(psi, 1, axis=self._axis(qubit))
        return float(np.sum(np.abs(slice_one) ** 2))

    def collapse(self, qubit: int, outcome: int) -> None:
        """Zero amplitudes inconsistent with ``outcome`` and renormalize."""
        psi = self.amplitudes.reshape([2] * self.num_qubits)
        axis = self._axis(qubit)
        idx = [slice(None)] * self.num_qubits
        idx[axis] = 1 - outcome
        psi[tuple(idx)] = 0.0
        flat = psi.reshape(-1)
        norm = np.linalg.norm(flat)
        if norm < 1e-150:
            raise ValueError("collapse onto a zero-probability outcome")
        flat /= norm
        self.amplitudes = flat

    def measure(self, qubit: int, uniform: float) -> int:
        """Sample and collapse one qubit.

        ``uniform`` is a draw in [0, 1); the outcome is 1 when it falls
        below the probability of one. Always consumes exactly one draw.
        """
        p_one = self.prob_one(qubit)
        outcome = 1 if uniform < p_one else 0
        self.collapse(qubit, outcome)
        return outcome


def apply_gate(state: StateVector, kind: GateKind,
               params: tuple[float, ...],
               targets: tuple[int, ...]) -> StateVector:
    """Pure variant: returns a new state, leaving the input untouched."""
    out = state.copy()
    out.apply_gate_inplace(kind, params, targets)
    return out
