"""OpenQASM 2 import and export for flat circuits.

The importer covers the statement subset a transpiler bridge needs:
``OPENQASM 2.0;`` and ``include`` headers, ``qreg``/``creg``
declarations, the standard-library gates named in GateKind, ``measure``,
``reset``, and ``barrier`` (accepted and dropped with a warning).
Registers flatten to contiguous indices in declaration order, and
register-wide statements broadcast element-wise in index order, so
``measure q -> c;`` becomes one measurement per bit. Angle expressions
support literals, ``pi``, arithmetic, and parentheses.

Anything outside the subset (``if``, ``gate`` definitions, ``opaque``)
raises ParseError rather than being skipped.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from math import pi

from .circuit import Gate, GateKind, Measure, QuantumCircuit, Reset
from .errors import ParseError

_GATES_BY_NAME = {kind.value: kind for kind in GateKind}

_TOKEN_RE = re.compile(r"""
      (?P<SKIP>\s+|//[^\n]*)
    | (?P<ARROW>->)
    | (?P<NUMBER>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
    | (?P<ID>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<STRING>"[^"\n]*")
    | (?P<PUNCT>[\[\](),;+\-*/])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            column = pos - line_start + 1
            raise ParseError("unexpected character", line, column,
                             text[pos])
        kind = match.lastgroup
        chunk = match.group()
        if kind != "SKIP":
            tokens.append(_Token(kind, chunk, line,
                                 match.start() - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = match.start() + chunk.rfind("\n") + 1
        pos = match.end()
    return tokens


class _Reader:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        token = self.peek()
        if token is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError("unexpected end of input",
                             last.line if last else 1,
                             last.column if last else 1)
        self.pos += 1
        return token

    def expect(self, text: str) -> _Token:
        token = self.next()
        if token.text != text:
            raise ParseError(f"expected {text!r}", token.line,
                             token.column, token.text)
        return token

    def accept(self, text: str) -> bool:
        token = self.peek()
        if token is not None and token.text == text:
            self.pos += 1
            return True
        return False


@dataclass(frozen=True)
class _Register:
    base: int
    size: int


@dataclass(frozen=True)
class _Operand:
    """A register reference: whole register when ``index`` is None."""

    register: _Register
    index: int | None

    def __len__(self) -> int:
        return 1 if self.index is not None else self.register.size

    def at(self, i: int) -> int:
        if self.index is not None:
            return self.register.base + self.index
        return self.register.base + i


class _QasmParser:
    def __init__(self, text: str):
        self.reader = _Reader(_tokenize(text))
        self.qregs: dict[str, _Register] = {}
        self.cregs: dict[str, _Register] = {}
        self.num_qubits = 0
        self.num_clbits = 0
        self.ops: list = []

    def parse(self) -> QuantumCircuit:
        first = True
        while self.reader.peek() is not None:
            token = self.reader.next()
            if token.text == "OPENQASM":
                if not first:
                    raise ParseError("version statement must come first",
                                     token.line, token.column, token.text)
                version = self.reader.next()
                if version.text != "2.0":
                    raise ParseError("only OpenQASM 2.0 is supported",
                                     version.line, version.column,
                                     version.text)
                self.reader.expect(";")
            elif token.text == "include":
                path = self.reader.next()
                if path.kind != "STRING":
                    raise ParseError("include expects a quoted filename",
                                     path.line, path.column, path.text)
                self.reader.expect(";")
            elif token.text in ("qreg", "creg"):
                self._declaration(token)
            elif token.text == "measure":
                self._measure(token)
            elif token.text == "reset":
                self._reset()
            elif token.text == "barrier":
                self._barrier(token)
            elif token.text in _GATES_BY_NAME:
                self._gate(token)
            else:
                raise ParseError("unsupported statement", token.line,
                                 token.column, token.text)
            first = False
        return QuantumCircuit(self.num_qubits, self.num_clbits, self.ops)

    # ------------------------------------------------------------------

    def _declaration(self, keyword: _Token) -> None:
        name = self.reader.next()
        if name.kind != "ID":
            raise ParseError("expected a register name", name.line,
                             name.column, name.text)
        if name.text in self.qregs or name.text in self.cregs:
            raise ParseError(f"register {name.text!r} already declared",
                             name.line, name.column, name.text)
        self.reader.expect("[")
        size_tok = self.reader.next()
        if size_tok.kind != "NUMBER" or not size_tok.text.isdigit():
            raise ParseError("register size must be an integer",
                             size_tok.line, size_tok.column, size_tok.text)
        size = int(size_tok.text)
        if size < 1:
            raise ParseError("register size must be positive",
                             size_tok.line, size_tok.column, size_tok.text)
        self.reader.expect("]")
        self.reader.expect(";")
        if keyword.text == "qreg":
            self.qregs[name.text] = _Register(self.num_qubits, size)
            self.num_qubits += size
        else:
            self.cregs[name.text] = _Register(self.num_clbits, size)
            self.num_clbits += size

    def _operand(self, table: dict[str, _Register],
                 what: str) -> _Operand:
        name = self.reader.next()
        register = table.get(name.text)
        if register is None:
            raise ParseError(f"unknown {what} register {name.text!r}",
                             name.line, name.column, name.text)
        index = None
        if self.reader.accept("["):
            index_tok = self.reader.next()
            if index_tok.kind != "NUMBER" or not index_tok.text.isdigit():
                raise ParseError("index must be an integer",
                                 index_tok.line, index_tok.column,
                                 index_tok.text)
            index = int(index_tok.text)
            if index >= register.size:
                raise ParseError(
                    f"index {index} out of range for {name.text!r} "
                    f"of size {register.size}",
                    index_tok.line, index_tok.column, index_tok.text)
            self.reader.expect("]")
        return _Operand(register, index)

    def _broadcast(self, operands: list[_Operand],
                   token: _Token) -> range:
        lengths = {len(o) for o in operands if o.index is None}
        if len(lengths) > 1:
            raise ParseError("mismatched register lengths",
                             token.line, token.column, token.text)
        return range(lengths.pop()) if lengths else range(1)

    def _gate(self, token: _Token) -> None:
        kind = _GATES_BY_NAME[token.text]
        params: tuple[float, ...] = ()
        if self.reader.accept("("):
            values = [self._expression()]
            while self.reader.accept(","):
                values.append(self._expression())
            self.reader.expect(")")
            params = tuple(values)
        if len(params) != kind.num_params:
            raise ParseError(
                f"{kind.value} takes {kind.num_params} parameter(s)",
                token.line, token.column, token.text)
        operands = [self._operand(self.qregs, "quantum")]
        while self.reader.accept(","):
            operands.append(self._operand(self.qregs, "quantum"))
        self.reader.expect(";")
        if len(operands) != kind.num_qubits:
            raise ParseError(
                f"{kind.value} takes {kind.num_qubits} operand(s)",
                token.line, token.column, token.text)
        for i in self._broadcast(operands, token):
            qubits = tuple(o.at(i) for o in operands)
            if len(set(qubits)) != len(qubits):
                raise ParseError(f"duplicate operand in {kind.value}",
                                 token.line, token.column, token.text)
            self.ops.append(Gate(kind, params, qubits))

    def _measure(self, token: _Token) -> None:
        source = self._operand(self.qregs, "quantum")
        self.reader.expect("->")
        target = self._operand(self.cregs, "classical")
        self.reader.expect(";")
        if (source.index is None) != (target.index is None):
            raise ParseError(
                "measure needs two registers or two single bits",
                token.line, token.column, token.text)
        if len(source) != len(target):
            raise ParseError("measure operands differ in length",
                             token.line, token.column, token.text)
        for i in range(len(source)):
            self.ops.append(Measure(source.at(i), target.at(i)))

    def _reset(self) -> None:
        operand = self._operand(self.qregs, "quantum")
        self.reader.expect(";")
        for i in range(len(operand)):
            self.ops.append(Reset(operand.at(i)))

    def _barrier(self, token: _Token) -> None:
        self._operand(self.qregs, "quantum")
        while self.reader.accept(","):
            self._operand(self.qregs, "quantum")
        self.reader.expect(";")
        warnings.warn(
            f"barrier at line {token.line} has no circuit equivalent "
            "and was dropped", stacklevel=4)

    # ------------------------------------------------------------------
    # angle expressions: literals, pi, + - * /, parentheses

    def _expression(self) -> float:
        value = self._term()
        while True:
            if self.reader.accept("+"):
                value += self._term()
            elif self.reader.accept("-"):
                value -= self._term()
            else:
                return value

    def _term(self) -> float:
        value = self._factor()
        while True:
            if self.reader.accept("*"):
                value *= self._factor()
            elif self.reader.accept("/"):
                divisor = self._factor()
                if divisor == 0:
                    token = self.reader.peek()
                    raise ParseError("division by zero in angle",
                                     token.line if token else 1,
                                     token.column if token else 1)
                value /= divisor
            else:
                return value

    def _factor(self) -> float:
        if self.reader.accept("-"):
            return -self._factor()
        if self.reader.accept("+"):
            return self._factor()
        if self.reader.accept("("):
            value = self._expression()
            self.reader.expect(")")
            return value
        token = self.reader.next()
        if token.kind == "NUMBER":
            return float(token.text)
        if token.text == "pi":
            return pi
        raise ParseError("expected a number, 'pi', or parentheses",
                         token.line, token.column, token.text)


def import_openqasm2(text: str) -> QuantumCircuit:
    """Parse OpenQASM 2 source into a circuit."""
    return _QasmParser(text).parse()


def _format_angle(value: float) -> str:
    return repr(float(value))


def export_openqasm2(circuit: QuantumCircuit) -> str:
    """Render a circuit as OpenQASM 2 source.

    Importing the output reproduces the circuit exactly. A trailing
    block measuring qubit i into bit i for every index compacts to the
    register-wide ``measure q -> c;`` spelling.
    """
    circuit.validate()
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";']
    if circuit.num_qubits:
        lines.append(f"qreg q[{circuit.num_qubits}];")
    if circuit.num_clbits:
        lines.append(f"creg c[{circuit.num_clbits}];")

    ops = list(circuit.ops)
    compact_measure = False
    n = circuit.num_qubits
    if (n and n == circuit.num_clbits and len(ops) >= n
            and ops[-n:] == [Measure(i, i) for i in range(n)]):
        compact_measure = True
        ops = ops[:-n]

    for op in ops:
        if isinstance(op, Gate):
            name = op.kind.value
            params = ""
            if op.params:
                params = "(" + ", ".join(_format_angle(p)
                                         for p in op.params) + ")"
            targets = ", ".join(f"q[{q}]" for q in op.qubits)
            lines.append(f"{name}{params} {targets};")
        elif isinstance(op, Measure):
            lines.append(f"measure q[{op.qubit}] -> c[{op.clbit}];")
        else:
            lines.append(f"reset q[{op.qubit}];")
    if compact_measure:
        lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"
