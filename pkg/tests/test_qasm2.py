"""OpenQASM 2 import and export."""

import math
import random

import pytest

from qirtk import (Gate, GateKind, Measure, ParseError, QuantumCircuit,
                   Reset, export_openqasm2, import_openqasm2)

import genutil


def test_import_bell_listing():
    circuit = import_openqasm2(genutil.corpus_text("bell.qasm"))
    assert circuit == QuantumCircuit(2, 2, [
        Gate(GateKind.H, (), (0,)),
        Gate(GateKind.CNOT, (), (0, 1)),
        Measure(0, 0),
        Measure(1, 1),
    ])


def test_export_bell_compacts_the_full_measure_tail():
    circuit = import_openqasm2(genutil.corpus_text("bell.qasm"))
    text = export_openqasm2(circuit)
    assert text == ('OPENQASM 2.0;\n'
                    'include "qelib1.inc";\n'
                    'qreg q[2];\n'
                    'creg c[2];\n'
                    'h q[0];\n'
                    'cx q[0], q[1];\n'
                    'measure q -> c;\n')


def test_partial_measures_are_written_element_wise():
    circuit = QuantumCircuit(2, 1, [Measure(1, 0)])
    text = export_openqasm2(circuit)
    assert "measure q[1] -> c[0];" in text
    assert "measure q -> c;" not in text


def test_export_without_clbits_omits_creg():
    text = export_openqasm2(QuantumCircuit(1, 0, [Gate(GateKind.X, (), (0,))]))
    assert "creg" not in text
    assert "qreg q[1];" in text


def test_whole_register_gate_broadcasts():
    circuit = import_openqasm2("OPENQASM 2.0;\nqreg q[3];\nh q;\n")
    assert circuit.ops == [Gate(GateKind.H, (), (q,)) for q in range(3)]


def test_two_register_broadcast_pairs_elementwise():
    circuit = import_openqasm2(
        "OPENQASM 2.0;\nqreg a[2];\nqreg b[2];\ncx a, b;\n")
    assert circuit.ops == [Gate(GateKind.CNOT, (), (0, 2)),
                           Gate(GateKind.CNOT, (), (1, 3))]


def test_mixed_scalar_register_broadcast():
    circuit = import_openqasm2(
        "OPENQASM 2.0;\nqreg a[1];\nqreg b[3];\ncx a[0], b;\n")
    assert circuit.ops == [Gate(GateKind.CNOT, (), (0, 1 + q))
                           for q in range(3)]


def test_broadcast_length_mismatch_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 2.0;\nqreg a[2];\nqreg b[3];\ncx a, b;\n")


def test_whole_register_measure_expands():
    circuit = import_openqasm2(
        "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nmeasure q -> c;\n")
    assert circuit.ops == [Measure(0, 0), Measure(1, 1)]


def test_measure_register_size_mismatch_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2(
            "OPENQASM 2.0;\nqreg q[2];\ncreg c[1];\nmeasure q -> c;\n")


def test_reset_broadcasts():
    circuit = import_openqasm2("OPENQASM 2.0;\nqreg q[2];\nreset q;\n")
    assert circuit.ops == [Reset(0), Reset(1)]


def test_parameter_expressions():
    circuit = import_openqasm2(
        "OPENQASM 2.0;\nqreg q[1];\n"
        "rz(pi/2) q[0];\nrx(-pi) q[0];\nry(2*pi+1) q[0];\nrz((pi)) q[0];\n")
    values = [op.params[0] for op in circuit.ops]
    assert values[0] == pytest.approx(math.pi / 2)
    assert values[1] == pytest.approx(-math.pi)
    assert values[2] == pytest.approx(2 * math.pi + 1)
    assert values[3] == pytest.approx(math.pi)


def test_division_by_zero_in_parameter_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 2.0;\nqreg q[1];\nrz(1/0) q[0];\n")


def test_header_is_optional_but_other_versions_are_rejected():
    circuit = import_openqasm2("qreg q[1];\nh q[0];\n")
    assert circuit.num_qubits == 1
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 3.0;\nqreg q[1];\n")


def test_version_statement_must_come_first():
    with pytest.raises(ParseError):
        import_openqasm2("qreg q[1];\nOPENQASM 2.0;\n")


def test_barrier_is_dropped_with_a_warning():
    with pytest.warns(UserWarning):
        circuit = import_openqasm2(
            "OPENQASM 2.0;\nqreg q[2];\nh q[0];\nbarrier q;\nh q[1];\n")
    assert [op.qubits for op in circuit.ops] == [(0,), (1,)]


def test_comments_are_ignored():
    circuit = import_openqasm2(
        "// leading note\nOPENQASM 2.0;\nqreg q[1]; // trailing\nx q[0];\n")
    assert circuit.ops == [Gate(GateKind.X, (), (0,))]


def test_unknown_gate_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 2.0;\nqreg q[1];\nfrob q[0];\n")


def test_undeclared_register_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 2.0;\nh q[0];\n")


def test_duplicate_register_name_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 2.0;\nqreg q[1];\nqreg q[2];\n")


def test_index_out_of_range_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 2.0;\nqreg q[2];\nh q[2];\n")


def test_missing_semicolon_is_rejected():
    with pytest.raises(ParseError):
        import_openqasm2("OPENQASM 2.0;\nqreg q[1]\nh q[0];\n")


@pytest.mark.parametrize("seed", range(20))
def test_random_circuits_round_trip(seed):
    circuit = genutil.random_circuit(random.Random(seed), measured="subset",
                                     allow_resets=True)
    assert import_openqasm2(export_openqasm2(circuit)) == circuit
