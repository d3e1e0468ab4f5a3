"""Module-to-module rewrites: unrolling, static addressing, lowering.

``unroll_and_fold`` partially evaluates the classical subset of a module:
integer arithmetic on known values folds, branches on known conditions
are taken, loop bodies replicate, and intrinsic calls are emitted in
execution order with concretized operands. ``allocate_static_addresses``
then eliminates dynamic qubit allocation by assigning each handle a
fixed index, reusing freed indices first-fit the way a register
allocator reuses registers. ``lower_to_base`` composes the two with
measurement sinking so that the result is a plain gate sequence followed
by measurements and output recording.

All transforms are pure functions from module to module and are
idempotent: running one twice gives a structurally identical result.
"""

from __future__ import annotations

import copy
import heapq
from dataclasses import dataclass, replace

from . import intrinsics
from .errors import TransformError
from .ir import (Alloca, BasicBlock, BinOp, Br, Call, CallArg, CondBr,
                 ConstFloat, ConstInt, DoubleType, Ext, FuncDef, GlobalRef,
                 ICmp, IntToAddr, IntType, Load, LocalRef, QUBIT,
                 QirModule, RESULT, Ret, Select, StaticAddr, Store, Value,
                 I1, REQUIRED_QUBITS_ATTR, REQUIRED_RESULTS_ATTR,
                 eval_binop, eval_cast, eval_icmp, make_int)
from .profile import Profile, validate_profile

DEFAULT_ITERATION_CAP = 65536


# ---------------------------------------------------------------------------
# abstract values shared by the passes
#
# Known classical constants are plain Python ints/floats; known pointer
# constants are StaticAddr/GlobalRef. Everything runtime-only is one of:


@dataclass(frozen=True)
class _Res:
    """A value produced by an instruction kept in the output."""

    name: str


@dataclass(frozen=True)
class _SlotRef:
    """The address of a tracked stack slot (an ``alloca`` result)."""

    index: int


_UNSET = object()


def _profile_gate(module: QirModule, what: str) -> None:
    report = validate_profile(module)
    if report.profile is Profile.UNSUPPORTED:
        first = report.violations[0] if report.violations else None
        detail = f": {first.reason} at {first.location}" if first else ""
        raise TransformError(
            "Unsupported", f"{what} requires a supported module{detail}")


def _prune_removed_declarations(module: QirModule,
                                before: set[str]) -> None:
    """Drop declarations for intrinsics whose calls all disappeared."""
    after = {i.callee for _, _, i in _walk_calls(module)}
    gone = before - after
    module.declarations = [d for d in module.declarations
                           if d.name not in gone]


def _walk_calls(module: QirModule):
    for fn in module.functions:
        for block in fn.blocks:
            for i, instr in enumerate(block.instructions):
                if isinstance(instr, Call):
                    yield block, i, instr


# ---------------------------------------------------------------------------
# unroll_and_fold


class _Unroller:
    def __init__(self, module: QirModule, cap: int):
        self.module = module
        self.cap = cap
        self.env: dict[str, object] = {}
        self.slots: list[object] = []
        self.out: list = []
        self.counter = 0
        self.visits: dict[str, int] = {}

    def fresh(self) -> str:
        name = f"v{self.counter}"
        self.counter += 1
        return name

    def run(self) -> list:
        fn = self.module.entry
        blocks = {b.label: b for b in fn.blocks}
        block = fn.blocks[0]
        prev: str | None = None
        while True:
            count = self.visits.get(block.label, 0) + 1
            self.visits[block.label] = count
            if count > self.cap + 1:
                raise TransformError(
                    "CapExceeded",
                    f"block {block.label!r} revisited more than "
                    f"{self.cap} times; raise the iteration cap if the "
                    "loop bound is intended")
            self._phis(block, prev)
            for instr in block.instructions:
                self._exec(instr)
            term = block.terminator
            if isinstance(term, Ret):
                return self.out
            if isinstance(term, Br):
                prev, block = block.label, blocks[term.label]
            else:
                assert isinstance(term, CondBr)
                cond = self._value(term.cond)
                if not isinstance(cond, int):
                    raise TransformError(
                        "DataDependent",
                        "branch condition depends on a measurement "
                        "result and cannot be evaluated statically")
                target = term.true_label if cond & 1 else term.false_label
                prev, block = block.label, blocks[target]

    def _phis(self, block: BasicBlock, prev: str | None) -> None:
        if not block.phis:
            return
        updates = []
        for phi in block.phis:
            for value, label in phi.incomings:
                if label == prev:
                    updates.append((phi.result, self._value(value)))
                    break
            else:
                raise TransformError(
                    "NotStraightLine",
                    f"phi %{phi.result} lacks an incoming for the "
                    f"edge taken from {prev!r}")
        for name, value in updates:
            self.env[name] = value

    # ------------------------------------------------------------------

    def _value(self, value: Value):
        if isinstance(value, LocalRef):
            try:
                return self.env[value.name]
            except KeyError:
                raise TransformError(
                    "UseBeforeDef",
                    f"%{value.name} is read before any assignment "
                    "on the executed path") from None
        if isinstance(value, ConstInt):
            return value.value
        if isinstance(value, ConstFloat):
            return value.value
        return value  # StaticAddr, GlobalRef

    def _concretize(self, abstract, ty, kind_hint: str | None = None):
        if isinstance(abstract, bool):
            abstract = int(abstract)
        if isinstance(abstract, int):
            width = ty.width if isinstance(ty, IntType) else 64
            if isinstance(ty, DoubleType):
                return ConstFloat(float(abstract))
            return make_int(width, abstract)
        if isinstance(abstract, float):
            return ConstFloat(abstract)
        if isinstance(abstract, StaticAddr):
            if kind_hint == intrinsics.QUBIT_ARG:
                return replace(abstract, kind=QUBIT)
            if kind_hint == intrinsics.RESULT_ARG:
                return replace(abstract, kind=RESULT)
            return abstract
        if isinstance(abstract, GlobalRef):
            return abstract
        if isinstance(abstract, _Res):
            return LocalRef(abstract.name)
        raise TransformError(
            "EscapingHandle",
            "a stack-slot address flows into an emitted instruction")

    # ------------------------------------------------------------------

    def _exec(self, instr) -> None:
        if isinstance(instr, Call):
            self._call(instr)
        elif isinstance(instr, Alloca):
            self.slots.append(_UNSET)
            self.env[instr.result] = _SlotRef(len(self.slots) - 1)
        elif isinstance(instr, Store):
            value = self._value(instr.value)
            target = self._value(instr.slot)
            if isinstance(target, _SlotRef):
                if isinstance(value, _SlotRef):
                    raise TransformError(
                        "EscapingHandle",
                        "a stack-slot address is stored to memory")
                self.slots[target.index] = value
            else:
                raise TransformError(
                    "EscapingHandle",
                    "store through a pointer that is not a stack slot")
        elif isinstance(instr, Load):
            source = self._value(instr.slot)
            if isinstance(source, _SlotRef):
                value = self.slots[source.index]
                if value is _UNSET:
                    raise TransformError(
                        "UseBeforeDef",
                        f"%{instr.result} loads an uninitialized slot")
                self.env[instr.result] = value
            elif isinstance(source, _Res):
                # loading a qubit handle out of an array element pointer
                name = self.fresh()
                self.out.append(Load(name, instr.ty,
                                     LocalRef(source.name)))
                self.env[instr.result] = _Res(name)
            else:
                raise TransformError(
                    "EscapingHandle",
                    "load through a pointer that is not a stack slot "
                    "or an array element")
        elif isinstance(instr, BinOp):
            lhs = self._value(instr.lhs)
            rhs = self._value(instr.rhs)
            if isinstance(lhs, int) and isinstance(rhs, int):
                self.env[instr.result] = eval_binop(
                    instr.op, instr.ty.width, lhs, rhs)
            else:
                name = self.fresh()
                self.out.append(BinOp(
                    instr.op, instr.ty,
                    self._concretize(lhs, instr.ty),
                    self._concretize(rhs, instr.ty), name))
                self.env[instr.result] = _Res(name)
        elif isinstance(instr, ICmp):
            lhs = self._value(instr.lhs)
            rhs = self._value(instr.rhs)
            if isinstance(lhs, int) and isinstance(rhs, int):
                self.env[instr.result] = eval_icmp(
                    instr.pred, instr.ty.width, lhs, rhs)
            else:
                name = self.fresh()
                self.out.append(ICmp(
                    instr.pred, instr.ty,
                    self._concretize(lhs, instr.ty),
                    self._concretize(rhs, instr.ty), name))
                self.env[instr.result] = _Res(name)
        elif isinstance(instr, IntToAddr):
            source = self._value(instr.source)
            if isinstance(source, int):
                index = source & ((1 << instr.source_type.width) - 1)
                self.env[instr.result] = StaticAddr(index)
            else:
                name = self.fresh()
                self.out.append(IntToAddr(
                    name, instr.source_type,
                    self._concretize(source, instr.source_type)))
                self.env[instr.result] = _Res(name)
        elif isinstance(instr, Ext):
            source = self._value(instr.source)
            if isinstance(source, int):
                self.env[instr.result] = eval_cast(
                    instr.op, source, instr.from_type.width,
                    instr.to_type.width)
            else:
                name = self.fresh()
                self.out.append(Ext(
                    instr.op, name,
                    self._concretize(source, instr.from_type),
                    instr.from_type, instr.to_type))
                self.env[instr.result] = _Res(name)
        elif isinstance(instr, Select):
            cond = self._value(instr.cond)
            if isinstance(cond, int):
                chosen = instr.if_true if cond & 1 else instr.if_false
                self.env[instr.result] = self._value(chosen)
            else:
                name = self.fresh()
                self.out.append(Select(
                    name, self._concretize(cond, I1), instr.ty,
                    self._concretize(self._value(instr.if_true), instr.ty),
                    self._concretize(self._value(instr.if_false),
                                     instr.ty)))
                self.env[instr.result] = _Res(name)
        else:
            raise TransformError(
                "Unsupported",
                f"cannot evaluate {type(instr).__name__}")

    def _call(self, instr: Call) -> None:
        spec = intrinsics.lookup(instr.callee)
        if spec is None:
            raise TransformError(
                "Unsupported", f"@{instr.callee} is not an intrinsic")
        args = []
        for kind, arg in zip(spec.arg_kinds, instr.args):
            value = self._concretize(self._value(arg.value), arg.ty, kind)
            args.append(CallArg(arg.ty, value))
        result = None
        if instr.result is not None:
            result = self.fresh()
            self.env[instr.result] = _Res(result)
        self.out.append(Call(instr.callee, args, result, instr.ret_type))


def unroll_and_fold(module: QirModule,
                    iteration_cap: int = DEFAULT_ITERATION_CAP) -> QirModule:
    """Partially evaluate classical control flow into straight-line code.

    Loops whose trip counts are statically known replicate their bodies;
    arithmetic, comparisons, casts, and selects on known values fold;
    intrinsic calls are emitted in execution order with constant
    operands substituted. Raises TransformError(CapExceeded) when any
    block is revisited more than ``iteration_cap`` times and
    TransformError(DataDependent) when a branch needs a measurement
    outcome.
    """
    if iteration_cap < 1:
        raise ValueError("iteration_cap must be at least 1")
    _profile_gate(module, "unroll_and_fold")
    unroller = _Unroller(module, iteration_cap)
    instructions = unroller.run()
    entry = module.entry
    fn = FuncDef(entry.name,
                 [BasicBlock("entry", [], instructions, Ret())],
                 entry.attr_group)
    return QirModule(module.source_name,
                     copy.deepcopy(module.declarations), [fn],
                     copy.deepcopy(module.attribute_groups))


# ---------------------------------------------------------------------------
# allocate_static_addresses


class _IndexPool:
    """First-fit index pool that never hands out pinned indices."""

    def __init__(self, pinned: set[int]):
        self.pinned = set(pinned)
        self.free: list[int] = []
        self.next = 0
        self.high_water = max(pinned) + 1 if pinned else 0

    def take(self) -> int:
        if self.free:
            index = heapq.heappop(self.free)
        else:
            while self.next in self.pinned:
                self.next += 1
            index = self.next
            self.next += 1
        self.high_water = max(self.high_water, index + 1)
        return index

    def give_back(self, index: int) -> None:
        heapq.heappush(self.free, index)


@dataclass(frozen=True)
class _Single:
    index: int


@dataclass
class _ArrayHandle:
    indices: list[int]


@dataclass(frozen=True)
class _ElemHandle:
    array: "_ArrayHandle"
    offset: int


_HANDLE_ACTIONS = frozenset({
    intrinsics.ALLOCATE, intrinsics.ALLOCATE_ARRAY, intrinsics.GET_ELEMENT,
    intrinsics.RELEASE, intrinsics.RELEASE_ARRAY,
})


def allocate_static_addresses(module: QirModule) -> QirModule:
    """Replace dynamic qubit handles with fixed indices.

    Allocation, element-lookup, and release calls disappear; every use
    of a handle becomes a constant address. Indices freed by a release
    are reused lowest-first, and indices already referenced statically
    are never reassigned, so no two simultaneously live qubits share an
    index. Sets the required-count attributes to the high-water marks.
    """
    _profile_gate(module, "allocate_static_addresses")
    module = copy.deepcopy(module)
    entry = module.entry
    if len(entry.blocks) != 1 or entry.blocks[0].phis:
        raise TransformError(
            "NotStraightLine",
            "static allocation requires a single-block module; run "
            "unroll_and_fold first")
    block = entry.blocks[0]

    pinned: set[int] = set()
    for _, _, call in _walk_calls(module):
        spec = intrinsics.lookup(call.callee)
        if spec is None:
            continue
        for kind, arg in zip(spec.arg_kinds, call.args):
            if (kind == intrinsics.QUBIT_ARG
                    and isinstance(arg.value, StaticAddr)):
                pinned.add(arg.value.index)
    pool = _IndexPool(pinned)

    handles: dict[str, object] = {}   # SSA name -> handle description
    slots: dict[str, object] = {}     # alloca name -> last stored handle
    handle_slots: set[str] = set()    # slots that ever held a handle
    classical_slots: set[str] = set()  # slots with kept stores or loads
    declared_before = {i.callee for _, _, i in _walk_calls(module)}
    had_allocations = False
    kept: list = []

    def as_handle(value: Value):
        if isinstance(value, LocalRef):
            return handles.get(value.name)
        return None

    for instr in block.instructions:
        if isinstance(instr, Alloca):
            slots[instr.result] = _UNSET
            kept.append(instr)
            continue
        if isinstance(instr, Store):
            handle = as_handle(instr.value)
            target = instr.slot
            if isinstance(target, LocalRef) and target.name in slots:
                name = target.name
                if handle is not None:
                    if name in classical_slots:
                        raise TransformError(
                            "EscapingHandle",
                            f"slot %{name} mixes qubit handles with "
                            "classical values")
                    handle_slots.add(name)
                    slots[name] = handle
                    continue  # handle-carrying store disappears
                if name in handle_slots:
                    raise TransformError(
                        "EscapingHandle",
                        f"slot %{name} mixes qubit handles with "
                        "classical values")
                classical_slots.add(name)
            elif handle is not None:
                raise TransformError(
                    "EscapingHandle",
                    "a qubit handle is stored through an untracked "
                    "pointer")
            kept.append(instr)
            continue
        if isinstance(instr, Load):
            source = instr.slot
            if isinstance(source, LocalRef):
                name = source.name
                if name in handle_slots:
                    stored = slots[name]
                    if stored is _UNSET:
                        raise TransformError(
                            "UseBeforeDef",
                            f"%{instr.result} loads slot %{name} "
                            "before any store")
                    handles[instr.result] = stored
                    continue  # load of a handle folds away
                handle = as_handle(source)
                if isinstance(handle, _ElemHandle):
                    index = handle.array.indices[handle.offset]
                    handles[instr.result] = _Single(index)
                    continue
                if handle is not None:
                    raise TransformError(
                        "EscapingHandle",
                        "load through a qubit handle that is not an "
                        "array element pointer")
                if name in slots:
                    classical_slots.add(name)
            kept.append(instr)
            continue
        if isinstance(instr, Call):
            spec = intrinsics.lookup(instr.callee)
            action = spec.action if spec else None
            if action in _HANDLE_ACTIONS:
                had_allocations = True
                self_result = instr.result
                if action == intrinsics.ALLOCATE:
                    handles[self_result] = _Single(pool.take())
                elif action == intrinsics.ALLOCATE_ARRAY:
                    size = _const_int(instr.args[0].value,
                                      "array allocation size")
                    if size < 0:
                        raise TransformError(
                            "NonConstantAllocation",
                            f"array allocation size {size} is negative")
                    handles[self_result] = _ArrayHandle(
                        [pool.take() for _ in range(size)])
                elif action == intrinsics.GET_ELEMENT:
                    array = as_handle(instr.args[0].value)
                    if not isinstance(array, _ArrayHandle):
                        raise TransformError(
                            "EscapingHandle",
                            "element lookup on a value that is not a "
                            "tracked array handle")
                    offset = _const_int(instr.args[1].value,
                                        "array element index")
                    if not 0 <= offset < len(array.indices):
                        raise TransformError(
                            "NonConstantAllocation",
                            f"array element index {offset} is out of "
                            f"bounds for {len(array.indices)} elements")
                    handles[self_result] = _ElemHandle(array, offset)
                elif action == intrinsics.RELEASE:
                    handle = as_handle(instr.args[0].value)
                    target = (handle.index
                              if isinstance(handle, _Single) else None)
                    if target is None:
                        addr = instr.args[0].value
                        if isinstance(addr, StaticAddr):
                            continue  # releasing a pinned static index
                        raise TransformError(
                            "EscapingHandle",
                            "release of a value that is not a tracked "
                            "qubit handle")
                    pool.give_back(target)
                else:  # RELEASE_ARRAY
                    handle = as_handle(instr.args[0].value)
                    if not isinstance(handle, _ArrayHandle):
                        raise TransformError(
                            "EscapingHandle",
                            "array release of a value that is not a "
                            "tracked array handle")
                    for index in handle.indices:
                        pool.give_back(index)
                continue
            new_args = []
            for kind, arg in zip(spec.arg_kinds if spec else [],
                                 instr.args):
                handle = as_handle(arg.value)
                if handle is None:
                    new_args.append(arg)
                    continue
                if isinstance(handle, _ElemHandle):
                    handle = _Single(handle.array.indices[handle.offset])
                if not isinstance(handle, _Single):
                    raise TransformError(
                        "EscapingHandle",
                        "an array handle is passed where a qubit is "
                        "expected")
                if kind != intrinsics.QUBIT_ARG:
                    raise TransformError(
                        "EscapingHandle",
                        "a qubit handle flows into a non-qubit argument")
                new_args.append(CallArg(arg.ty,
                                        StaticAddr(handle.index, QUBIT)))
            kept.append(Call(instr.callee, new_args, instr.result,
                             instr.ret_type))
            continue
        # classical instruction: handles must not leak into it
        for operand in _operands(instr):
            if as_handle(operand) is not None:
                raise TransformError(
                    "EscapingHandle",
                    "a qubit handle flows into a classical instruction")
        kept.append(instr)

    block.instructions = [i for i in kept
                          if not (isinstance(i, Alloca)
                                  and i.result in handle_slots)]
    _prune_removed_declarations(module, declared_before)

    has_attrs = (REQUIRED_QUBITS_ATTR in module.attributes
                 or REQUIRED_RESULTS_ATTR in module.attributes)
    if had_allocations or has_attrs:
        _set_required_attrs(module)
    return module


def _const_int(value: Value, what: str) -> int:
    if not isinstance(value, ConstInt):
        raise TransformError(
            "NonConstantAllocation",
            f"{what} must be a constant integer; run unroll_and_fold "
            "first")
    return value.value


def _operands(instr) -> list[Value]:
    if isinstance(instr, BinOp) or isinstance(instr, ICmp):
        return [instr.lhs, instr.rhs]
    if isinstance(instr, IntToAddr):
        return [instr.source]
    if isinstance(instr, Ext):
        return [instr.source]
    if isinstance(instr, Select):
        return [instr.cond, instr.if_true, instr.if_false]
    if isinstance(instr, Store):
        return [instr.value, instr.slot]
    if isinstance(instr, Load):
        return [instr.slot]
    return []


def _set_required_attrs(module: QirModule) -> None:
    max_qubit = -1
    max_result = -1
    for _, _, call in _walk_calls(module):
        spec = intrinsics.lookup(call.callee)
        kinds = spec.arg_kinds if spec else []
        for kind, arg in zip(kinds, call.args):
            if not isinstance(arg.value, StaticAddr):
                continue
            if kind == intrinsics.QUBIT_ARG:
                max_qubit = max(max_qubit, arg.value.index)
            elif kind == intrinsics.RESULT_ARG:
                max_result = max(max_result, arg.value.index)
    entry = module.entry
    if entry.attr_group is None:
        gid = 0
        while gid in module.attribute_groups:
            gid += 1
        module.attribute_groups[gid] = {}
        entry.attr_group = gid
    group = module.attribute_groups[entry.attr_group]
    group[REQUIRED_QUBITS_ATTR] = str(max_qubit + 1)
    group[REQUIRED_RESULTS_ATTR] = str(max_result + 1)


# ---------------------------------------------------------------------------
# dead classical code removal (used while lowering)


_PURE_CLASSICAL = (BinOp, ICmp, Ext, Select, IntToAddr)


def _prune_dead(module: QirModule) -> QirModule:
    module = copy.deepcopy(module)
    entry = module.entry
    declared_before = {i.callee for _, _, i in _walk_calls(module)}
    for block in entry.blocks:
        while True:
            used: set[str] = set()
            for instr in block.instructions:
                for operand in _call_operands(instr):
                    if isinstance(operand, LocalRef):
                        used.add(operand.name)
            if block.terminator is not None:
                term = block.terminator
                if isinstance(term, CondBr) and isinstance(term.cond,
                                                           LocalRef):
                    used.add(term.cond.name)
            kept = []
            dropped = False
            for instr in block.instructions:
                removable = False
                if isinstance(instr, _PURE_CLASSICAL):
                    removable = instr.result not in used
                elif isinstance(instr, Call) and instr.result is not None:
                    spec = intrinsics.lookup(instr.callee)
                    if spec and spec.action == intrinsics.READ_RESULT:
                        removable = instr.result not in used
                if removable:
                    dropped = True
                else:
                    kept.append(instr)
            block.instructions = kept
            if not dropped:
                break
    _prune_removed_declarations(module, declared_before)
    return module


def _call_operands(instr) -> list[Value]:
    if isinstance(instr, Call):
        return [a.value for a in instr.args]
    return _operands(instr)


# ---------------------------------------------------------------------------
# measurement sinking


def _static_qubits(spec, call: Call) -> list[int]:
    out = []
    for kind, arg in zip(spec.arg_kinds, call.args):
        if kind == intrinsics.QUBIT_ARG:
            if not isinstance(arg.value, StaticAddr):
                raise TransformError(
                    "FeedbackRequired",
                    f"@{call.callee} has a qubit operand that is not a "
                    "constant address")
            out.append(arg.value.index)
    return out


def _static_result(spec, call: Call) -> int:
    for kind, arg in zip(spec.arg_kinds, call.args):
        if kind == intrinsics.RESULT_ARG:
            if not isinstance(arg.value, StaticAddr):
                raise TransformError(
                    "FeedbackRequired",
                    f"@{call.callee} has a result operand that is not a "
                    "constant address")
            return arg.value.index
    raise TransformError("FeedbackRequired",
                         f"@{call.callee} lacks a result operand")


def _sink_measurements(module: QirModule) -> QirModule:
    """Move measurements past later disjoint gates to the block's tail.

    Output recording moves after the measurements, preserving relative
    order. Obstructions (a gate or reset touching an already-measured
    qubit, a reset after any measurement, or a result re-measured after
    being recorded) raise TransformError(FeedbackRequired): such
    programs need feedback and have no equivalent static schedule.
    """
    module = copy.deepcopy(module)
    entry = module.entry
    if len(entry.blocks) != 1 or entry.blocks[0].phis:
        raise TransformError(
            "NotStraightLine",
            "measurement sinking requires a single-block module")
    block = entry.blocks[0]

    body: list = []
    measures: list[Call] = []
    records: list[Call] = []
    measured_qubits: set[int] = set()
    recorded_results: set[int] = set()

    for instr in block.instructions:
        if not isinstance(instr, Call):
            body.append(instr)
            continue
        spec = intrinsics.lookup(instr.callee)
        action = spec.action if spec else None
        if action == intrinsics.MEASURE:
            result = _static_result(spec, instr)
            if result in recorded_results:
                raise TransformError(
                    "FeedbackRequired",
                    f"result {result} is measured again after being "
                    "recorded; the recorded value cannot be deferred")
            measured_qubits.update(_static_qubits(spec, instr))
            measures.append(instr)
        elif action == intrinsics.GATE:
            overlap = measured_qubits.intersection(
                _static_qubits(spec, instr))
            if overlap:
                raise TransformError(
                    "FeedbackRequired",
                    f"a gate acts on qubit {min(overlap)} after its "
                    "measurement; measurements cannot move past it")
            body.append(instr)
        elif action == intrinsics.RESET:
            if measures:
                raise TransformError(
                    "FeedbackRequired",
                    "a reset follows a measurement; reordering would "
                    "change the sampling sequence")
            body.append(instr)
        elif action in intrinsics.BASE_RECORD_ACTIONS:
            if action == intrinsics.RECORD:
                recorded_results.add(_static_result(spec, instr))
            records.append(instr)
        elif action == intrinsics.READ_RESULT:
            if measures:
                raise TransformError(
                    "FeedbackRequired",
                    "a measurement result is read back inside the "
                    "program; the base profile has no readback")
            body.append(instr)
        else:
            raise TransformError(
                "FeedbackRequired",
                f"@{instr.callee} cannot appear in a base-profile "
                "program")

    block.instructions = body + measures + records
    return module


# ---------------------------------------------------------------------------
# lower_to_base


def lower_to_base(module: QirModule,
                  iteration_cap: int = DEFAULT_ITERATION_CAP) -> QirModule:
    """Lower a module with classical control to the static gate form.

    Pipeline: unroll and fold, assign static addresses, drop dead
    classical residue, sink measurements behind the gates they commute
    with. The result always validates as the base form. Programs whose
    gates genuinely depend on earlier measurements raise
    TransformError(FeedbackRequired).
    """
    try:
        out = unroll_and_fold(module, iteration_cap)
    except TransformError as err:
        if err.reason == "DataDependent":
            raise TransformError(
                "FeedbackRequired",
                "control flow depends on a measurement outcome; the "
                "program cannot be scheduled statically") from err
        raise
    out = allocate_static_addresses(out)
    out = _prune_dead(out)
    out = _sink_measurements(out)
    report = validate_profile(out)
    if report.profile is not Profile.BASE:
        first = report.violations[0] if report.violations else None
        detail = f": {first.reason}" if first else ""
        raise TransformError(
            "FeedbackRequired",
            f"lowered module still fails base validation{detail}")
    _set_required_attrs(out)
    return out
