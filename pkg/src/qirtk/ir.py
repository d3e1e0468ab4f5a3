"""In-memory form of the textual IR subset.

Instances compare structurally (dataclass equality), which the round-trip
and idempotence tests rely on. SSA registers are immutable values; mutable
program state lives in alloca slots addressed through ``Store``/``Load``.

Integer semantics are two's complement at the declared width. The stored
canonical representative is the signed value for widths above one and the
plain bit for ``i1``, so constants print back exactly as parsed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

QUBIT = "qubit"
RESULT = "result"


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class IntType:
    width: int

    def __str__(self) -> str:
        return f"i{self.width}"


@dataclass(frozen=True)
class DoubleType:
    def __str__(self) -> str:
        return "double"


@dataclass(frozen=True)
class PtrType:
    def __str__(self) -> str:
        return "ptr"


@dataclass(frozen=True)
class VoidType:
    def __str__(self) -> str:
        return "void"


I1 = IntType(1)
I32 = IntType(32)
I64 = IntType(64)
DOUBLE = DoubleType()
PTR = PtrType()
VOID = VoidType()

Type = IntType | DoubleType | PtrType | VoidType

INT_WIDTHS = (1, 32, 64)


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class LocalRef:
    name: str


@dataclass(frozen=True)
class ConstInt:
    width: int
    value: int


@dataclass(frozen=True)
class ConstFloat:
    value: float


@dataclass(frozen=True)
class StaticAddr:
    """Constant qubit or result address; index 0 prints as ``null``."""

    index: int
    kind: str = QUBIT


@dataclass(frozen=True)
class GlobalRef:
    name: str


Value = LocalRef | ConstInt | ConstFloat | StaticAddr | GlobalRef


def make_int(width: int, value: int) -> ConstInt:
    return ConstInt(width, wrap_int(width, value))


def wrap_int(width: int, value: int) -> int:
    """Reduce to the canonical stored representative at ``width`` bits."""
    bits = value & ((1 << width) - 1)
    if width == 1:
        return bits
    if bits >= 1 << (width - 1):
        bits -= 1 << width
    return bits


def signed_int(width: int, stored: int) -> int:
    # i1 stores the raw bit; its signed reading is 0 or -1.
    if width == 1:
        return -stored
    return stored


def unsigned_int(width: int, stored: int) -> int:
    return stored & ((1 << width) - 1)


def eval_binop(op: str, width: int, lhs: int, rhs: int) -> int:
    if op == "add":
        raw = lhs + rhs
    elif op == "sub":
        raw = lhs - rhs
    elif op == "mul":
        raw = lhs * rhs
    elif op == "and":
        raw = lhs & rhs
    elif op == "or":
        raw = lhs | rhs
    elif op == "xor":
        raw = lhs ^ rhs
    else:
        raise ValueError(f"unknown binary op {op!r}")
    return wrap_int(width, raw)


def eval_icmp(pred: str, width: int, lhs: int, rhs: int) -> int:
    if pred == "eq":
        return int(lhs == rhs)
    if pred == "ne":
        return int(lhs != rhs)
    a = signed_int(width, lhs)
    b = signed_int(width, rhs)
    if pred == "slt":
        return int(a < b)
    if pred == "sle":
        return int(a <= b)
    if pred == "sgt":
        return int(a > b)
    if pred == "sge":
        return int(a >= b)
    raise ValueError(f"unknown icmp predicate {pred!r}")


def eval_cast(op: str, value: int, from_width: int, to_width: int) -> int:
    if op == "zext":
        return wrap_int(to_width, unsigned_int(from_width, value))
    if op == "sext":
        return wrap_int(to_width, signed_int(from_width, value))
    if op == "trunc":
        return wrap_int(to_width, value)
    raise ValueError(f"unknown cast op {op!r}")


# ---------------------------------------------------------------------------
# instructions


@dataclass
class CallArg:
    ty: Type
    value: Value


@dataclass
class Call:
    callee: str
    args: list[CallArg]
    result: str | None = None
    ret_type: Type = VOID


@dataclass
class Alloca:
    result: str
    slot_type: Type = I32


@dataclass
class Store:
    value_type: Type
    value: Value
    slot: Value


@dataclass
class Load:
    result: str
    ty: Type
    slot: Value


BINOPS = ("add", "sub", "mul", "and", "or", "xor")


@dataclass
class BinOp:
    op: str
    ty: IntType
    lhs: Value
    rhs: Value
    result: str


ICMP_PREDS = ("eq", "ne", "slt", "sle", "sgt", "sge")


@dataclass
class ICmp:
    pred: str
    ty: IntType
    lhs: Value
    rhs: Value
    result: str


@dataclass
class IntToAddr:
    """Dynamic integer-to-address cast (the ``inttoptr`` instruction)."""

    result: str
    source_type: IntType
    source: Value


EXT_OPS = ("zext", "sext", "trunc")


@dataclass
class Ext:
    op: str
    result: str
    source: Value
    from_type: IntType
    to_type: IntType


@dataclass
class Select:
    result: str
    cond: Value
    ty: Type
    if_true: Value
    if_false: Value


Instruction = Call | Alloca | Store | Load | BinOp | ICmp | IntToAddr | Ext | Select


# ---------------------------------------------------------------------------
# terminators, blocks, functions, modules


@dataclass
class Br:
    label: str


@dataclass
class CondBr:
    cond: Value
    true_label: str
    false_label: str


@dataclass
class Ret:
    pass


Terminator = Br | CondBr | Ret


@dataclass
class PhiNode:
    result: str
    ty: Type
    incomings: list[tuple[Value, str]]


@dataclass
class BasicBlock:
    label: str
    phis: list[PhiNode] = field(default_factory=list)
    instructions: list[Instruction] = field(default_factory=list)
    terminator: Terminator | None = None


@dataclass
class FuncDecl:
    name: str
    param_types: list[Type]
    ret_type: Type = VOID


@dataclass
class FuncDef:
    name: str
    blocks: list[BasicBlock]
    attr_group: int | None = None


ENTRY_POINT_ATTR = "entry_point"
REQUIRED_QUBITS_ATTR = "required_num_qubits"
REQUIRED_RESULTS_ATTR = "required_num_results"


@dataclass
class QirModule:
    source_name: str = ""
    declarations: list[FuncDecl] = field(default_factory=list)
    functions: list[FuncDef] = field(default_factory=list)
    attribute_groups: dict[int, dict[str, str]] = field(default_factory=dict)

    def function_attributes(self, fn: FuncDef) -> dict[str, str]:
        if fn.attr_group is None:
            return {}
        return self.attribute_groups.get(fn.attr_group, {})

    @property
    def entry(self) -> FuncDef:
        """The function executed per shot.

        Either the unique function tagged ``entry_point`` or, failing that,
        the module's single definition. The parser guarantees one exists;
        hand-built modules that violate this raise ``ValueError``.
        """
        tagged = [f for f in self.functions
                  if ENTRY_POINT_ATTR in self.function_attributes(f)]
        if len(tagged) == 1:
            return tagged[0]
        if not tagged and len(self.functions) == 1:
            return self.functions[0]
        raise ValueError("module has no unambiguous entry function")

    @property
    def attributes(self) -> dict[str, str]:
        return dict(self.function_attributes(self.entry))

    def required_count(self, key: str) -> int | None:
        raw = self.attributes.get(key)
        if raw is None:
            return None
        try:
            return int(raw)
        except ValueError:
            return None

    def defined_names(self) -> set[str]:
        return {f.name for f in self.functions}

    def declared_names(self) -> set[str]:
        return {d.name for d in self.declarations}


def entry_instructions(module: QirModule):
    """Iterate (block, index, instruction) over the entry function."""
    for block in module.entry.blocks:
        for i, instr in enumerate(block.instructions):
            yield block, i, instr
