"""Recursive-descent parser for the textual IR subset.

The grammar is a whitelist: ``declare``/``define``/``attributes`` at module
level; ``call``, ``alloca``, ``load``, ``store``, ``br``, ``icmp``, the six
integer binary ops, ``phi``, ``select``, ``inttoptr``, ``zext``/``sext``/
``trunc``, and ``ret void`` inside functions. Anything else is a hard
``ParseError`` pointing at the offending line. Unknown module-level
metadata (``target ...`` and ``!...`` lines) is skipped.

Normalizations applied while parsing:
  * legacy typed pointers (``%Qubit*``, ``%Result*``) become opaque ``ptr``
  * ``null`` and ``inttoptr (i64 N to ptr)`` constants become StaticAddr,
    with the qubit/result kind inferred from the callee signature
  * ``writeonly``/``readonly`` annotations and ``align``/``nsw``/``nuw``
    flags are accepted and dropped
"""

from __future__ import annotations

import struct

from . import intrinsics
from .errors import ParseError
from .ir import (BINOPS, DOUBLE, EXT_OPS, I1, I64, ICMP_PREDS, PTR, QUBIT,
                 RESULT, VOID, Alloca, BasicBlock, BinOp, Br, Call, CallArg,
                 CondBr, ConstFloat, ConstInt, DoubleType, Ext, FuncDecl,
                 FuncDef, GlobalRef, ICmp, Instruction, IntToAddr, IntType,
                 Load, LocalRef, PhiNode, PtrType, QirModule, Ret, Select,
                 StaticAddr, Store, Type, Value, make_int)
from .lexer import Token, global_name, local_name, tokenize

_TYPE_WORDS: dict[str, Type] = {
    "void": VOID,
    "i1": I1,
    "i32": IntType(32),
    "i64": I64,
    "double": DOUBLE,
    "ptr": PTR,
}

_ARG_ANNOTATIONS = {"writeonly", "readonly"}
_BINOP_FLAGS = {"nsw", "nuw"}

#: legacy typed pointer spellings and the address kind they imply
_LEGACY_PTR_KINDS = {"Qubit": QUBIT, "Result": RESULT}


class _Cursor:
    """Token cursor over a single source line."""

    def __init__(self, tokens: list[Token], line_no: int):
        self.tokens = tokens
        self.line = line_no
        self.pos = 0

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self) -> Token | None:
        return None if self.at_end() else self.tokens[self.pos]

    def peek2(self) -> Token | None:
        if self.pos + 1 >= len(self.tokens):
            return None
        return self.tokens[self.pos + 1]

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", line=self.line)
        self.pos += 1
        return tok

    def expect(self, kind: str | None = None, text: str | None = None) -> Token:
        tok = self.next()
        if kind is not None and tok.kind != kind:
            self.fail(f"expected {text or kind}", tok)
        if text is not None and tok.text != text:
            self.fail(f"expected {text!r}", tok)
        return tok

    def expect_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            self.fail("trailing tokens", tok)

    def fail(self, message: str, token: Token | None = None) -> None:
        token = token or (self.tokens[-1] if self.tokens else None)
        col = token.column if token else None
        txt = token.text if token else None
        raise ParseError(message, line=self.line, column=col, token=txt)


class _ModuleParser:
    def __init__(self, text: str):
        self.lines = tokenize(_strip_ignored(text))
        self.source_name = ""
        self.declarations: list[FuncDecl] = []
        self.functions: list[FuncDef] = []
        self.attribute_groups: dict[int, dict[str, str]] = {}
        self.define_lines: list[int] = []
        self.call_sites: list[tuple[str, int]] = []
        # per-function bookkeeping, reset in _begin_function
        self.fn: FuncDef | None = None
        self.block: BasicBlock | None = None
        self.defined: set[str] = set()
        self.uses: dict[str, int] = {}
        self.label_refs: list[tuple[str, int]] = []
        self.phi_lines: list[tuple[BasicBlock, PhiNode, int]] = []
        self.last_line = 1

    # ------------------------------------------------------------------
    # top level

    def parse(self) -> QirModule:
        for tokens in self.lines:
            self.last_line = tokens[0].line
            cur = _Cursor(tokens, tokens[0].line)
            if self.fn is None:
                self._top_level(cur)
            else:
                self._function_line(cur)
        if self.fn is not None:
            raise ParseError("unterminated function body", line=self.last_line)
        if not self.functions:
            raise ParseError("module defines no function", line=self.last_line)
        module = QirModule(self.source_name, self.declarations,
                           self.functions, self.attribute_groups)
        self._check_module(module)
        return module

    def _top_level(self, cur: _Cursor) -> None:
        tok = cur.peek()
        assert tok is not None
        if tok.kind != "WORD":
            cur.fail("expected a module-level statement", tok)
        if tok.text == "source_filename":
            cur.next()
            cur.expect("PUNCT", "=")
            name = cur.expect("STRING")
            self.source_name = name.text[1:-1]
            cur.expect_end()
        elif tok.text == "declare":
            self._parse_declare(cur)
        elif tok.text == "define":
            self._parse_define(cur)
        elif tok.text == "attributes":
            self._parse_attr_group(cur)
        else:
            cur.fail("unsupported module-level statement", tok)

    def _parse_declare(self, cur: _Cursor) -> None:
        cur.next()
        ret_type, _ = self._parse_type(cur)
        name = global_name(cur.expect("GLOBAL").text)
        cur.expect("PUNCT", "(")
        params: list[Type] = []
        if not _peek_punct(cur, ")"):
            while True:
                ty, _ = self._parse_type(cur)
                while _peek_word_in(cur, _ARG_ANNOTATIONS):
                    cur.next()
                params.append(ty)
                if _peek_punct(cur, ","):
                    cur.next()
                    continue
                break
        cur.expect("PUNCT", ")")
        if cur.peek() is not None and cur.peek().kind == "ATTRID":
            cur.next()
        cur.expect_end()
        self.declarations.append(FuncDecl(name, params, ret_type))

    def _parse_define(self, cur: _Cursor) -> None:
        line = cur.line
        cur.next()
        ret = cur.expect("WORD")
        if ret.text != "void":
            cur.fail("only void function definitions are supported", ret)
        name = global_name(cur.expect("GLOBAL").text)
        cur.expect("PUNCT", "(")
        cur.expect("PUNCT", ")")
        attr_group: int | None = None
        inline_attrs: dict[str, str] = {}
        while not _peek_punct(cur, "{"):
            tok = cur.next()
            if tok.kind == "ATTRID":
                attr_group = int(tok.text[1:])
            elif tok.kind == "STRING":
                key = tok.text[1:-1]
                value = ""
                if _peek_punct(cur, "="):
                    cur.next()
                    value = cur.expect("STRING").text[1:-1]
                inline_attrs[key] = value
            else:
                cur.fail("expected attribute or '{'", tok)
        cur.expect("PUNCT", "{")
        cur.expect_end()
        if inline_attrs:
            # fold inline attributes into a group so the model has one path
            if attr_group is None:
                attr_group = self._fresh_group_id()
                self.attribute_groups[attr_group] = {}
            self.attribute_groups.setdefault(attr_group, {}).update(inline_attrs)
        self._begin_function(name, attr_group, line)

    def _fresh_group_id(self) -> int:
        gid = 0
        while gid in self.attribute_groups:
            gid += 1
        return gid

    def _parse_attr_group(self, cur: _Cursor) -> None:
        cur.next()
        gid_tok = cur.expect("ATTRID")
        gid = int(gid_tok.text[1:])
        if gid in self.attribute_groups:
            cur.fail(f"duplicate attribute group #{gid}", gid_tok)
        cur.expect("PUNCT", "=")
        cur.expect("PUNCT", "{")
        attrs: dict[str, str] = {}
        while not _peek_punct(cur, "}"):
            key = cur.expect("STRING").text[1:-1]
            value = ""
            if _peek_punct(cur, "="):
                cur.next()
                value = cur.expect("STRING").text[1:-1]
            attrs[key] = value
        cur.expect("PUNCT", "}")
        cur.expect_end()
        self.attribute_groups[gid] = attrs

    # ------------------------------------------------------------------
    # function bodies

    def _begin_function(self, name: str, attr_group: int | None,
                        line: int) -> None:
        self.fn = FuncDef(name, [], attr_group)
        self.block = None
        self.defined = set()
        self.uses = {}
        self.label_refs = []
        self.phi_lines = []
        self.define_lines.append(line)

    def _function_line(self, cur: _Cursor) -> None:
        tok = cur.peek()
        assert tok is not None and self.fn is not None
        if tok.kind == "PUNCT" and tok.text == "}":
            cur.next()
            cur.expect_end()
            self._end_function(cur)
            return
        if (tok.kind == "WORD" and cur.peek2() is not None
                and cur.peek2().kind == "PUNCT" and cur.peek2().text == ":"):
            cur.next()
            cur.next()
            cur.expect_end()
            self._start_block(tok.text, cur)
            return
        if self.block is None:
            # instructions before any label open an implicit entry block
            self._start_block("entry", cur)
        assert self.block is not None
        if self.block.terminator is not None:
            cur.fail("instruction after block terminator", tok)
        self._parse_instruction(cur)

    def _start_block(self, label: str, cur: _Cursor) -> None:
        assert self.fn is not None
        if self.block is not None and self.block.terminator is None:
            cur.fail(f"block {self.block.label!r} has no terminator")
        if any(b.label == label for b in self.fn.blocks):
            cur.fail(f"duplicate block label {label!r}")
        self.block = BasicBlock(label)
        self.fn.blocks.append(self.block)

    def _end_function(self, cur: _Cursor) -> None:
        assert self.fn is not None
        if self.block is None:
            cur.fail("function body has no blocks")
        if self.block.terminator is None:
            cur.fail(f"block {self.block.label!r} has no terminator")
        labels = {b.label for b in self.fn.blocks}
        for label, line in self.label_refs:
            if label not in labels:
                raise ParseError(f"branch to unknown label {label!r}",
                                 line=line, token=label)
        undefined = [u for u in self.uses if u not in self.defined]
        if undefined:
            name = min(undefined, key=lambda u: self.uses[u])
            raise ParseError(f"use of undefined value %{name}",
                             line=self.uses[name], token=f"%{name}")
        self._check_phis()
        self.functions.append(self.fn)
        self.fn = None
        self.block = None

    def _check_phis(self) -> None:
        assert self.fn is not None
        preds: dict[str, set[str]] = {b.label: set() for b in self.fn.blocks}
        for b in self.fn.blocks:
            term = b.terminator
            if isinstance(term, Br):
                preds[term.label].add(b.label)
            elif isinstance(term, CondBr):
                preds[term.true_label].add(b.label)
                preds[term.false_label].add(b.label)
        for block, phi, line in self.phi_lines:
            incoming = [label for _, label in phi.incomings]
            if len(set(incoming)) != len(incoming):
                raise ParseError("phi lists a predecessor twice", line=line)
            if set(incoming) != preds[block.label]:
                raise ParseError(
                    f"phi incoming labels {sorted(incoming)} do not match "
                    f"predecessors {sorted(preds[block.label])}", line=line)

    # ------------------------------------------------------------------
    # instructions

    def _parse_instruction(self, cur: _Cursor) -> None:
        assert self.block is not None
        tok = cur.peek()
        assert tok is not None
        if tok.kind == "WORD":
            if tok.text == "call":
                cur.next()
                self._finish_call(cur, result=None)
            elif tok.text == "store":
                self._parse_store(cur)
            elif tok.text == "br":
                self._parse_br(cur)
            elif tok.text == "ret":
                cur.next()
                word = cur.expect("WORD")
                if word.text != "void":
                    cur.fail("only 'ret void' is supported", word)
                cur.expect_end()
                self.block.terminator = Ret()
            else:
                cur.fail("unsupported instruction", tok)
            return
        if tok.kind == "LOCAL":
            cur.next()
            result = local_name(tok.text)
            eq = cur.expect("PUNCT", "=")
            del eq
            op = cur.expect("WORD")
            self._define(result, tok)
            if op.text == "call":
                self._finish_call(cur, result=result)
            elif op.text == "alloca":
                self._parse_alloca(cur, result)
            elif op.text == "load":
                self._parse_load(cur, result)
            elif op.text in BINOPS:
                self._parse_binop(cur, op.text, result)
            elif op.text == "icmp":
                self._parse_icmp(cur, result)
            elif op.text == "inttoptr":
                self._parse_inttoptr(cur, result)
            elif op.text in EXT_OPS:
                self._parse_ext(cur, op.text, result)
            elif op.text == "select":
                self._parse_select(cur, result)
            elif op.text == "phi":
                self._parse_phi(cur, result, op)
            else:
                cur.fail("unsupported instruction", op)
            return
        cur.fail("unsupported statement", tok)

    def _define(self, name: str, tok: Token) -> None:
        if name in self.defined:
            raise ParseError(f"%{name} assigned more than once",
                             line=tok.line, column=tok.column,
                             token=tok.text)
        self.defined.add(name)

    def _use(self, name: str, line: int) -> None:
        self.uses.setdefault(name, line)

    def _finish_call(self, cur: _Cursor, result: str | None) -> None:
        assert self.block is not None
        ret_type, _ = self._parse_type(cur)
        callee_tok = cur.expect("GLOBAL")
        callee = global_name(callee_tok.text)
        cur.expect("PUNCT", "(")
        args: list[CallArg] = []
        if not _peek_punct(cur, ")"):
            while True:
                ty, hint = self._parse_type(cur)
                while _peek_word_in(cur, _ARG_ANNOTATIONS):
                    cur.next()
                value = self._parse_value(cur, ty, hint)
                args.append(CallArg(ty, value))
                if _peek_punct(cur, ","):
                    cur.next()
                    continue
                break
        cur.expect("PUNCT", ")")
        cur.expect_end()
        call = Call(callee, args, result, ret_type)
        coerce_static_kinds(call)
        self.call_sites.append((callee, callee_tok.line))
        self.block.instructions.append(call)

    def _parse_alloca(self, cur: _Cursor, result: str) -> None:
        ty, _ = self._parse_type(cur)
        if ty == VOID:
            cur.fail("alloca of void")
        self._skip_align(cur)
        cur.expect_end()
        self._append(Alloca(result, ty))

    def _parse_store(self, cur: _Cursor) -> None:
        cur.next()
        ty, hint = self._parse_type(cur)
        value = self._parse_value(cur, ty, hint)
        cur.expect("PUNCT", ",")
        slot_ty, _ = self._parse_type(cur)
        if not isinstance(slot_ty, PtrType):
            cur.fail("store destination must be a pointer")
        slot = self._parse_value(cur, slot_ty, None)
        self._skip_align(cur)
        cur.expect_end()
        self._append(Store(ty, value, slot))

    def _parse_load(self, cur: _Cursor, result: str) -> None:
        ty, _ = self._parse_type(cur)
        if ty == VOID:
            cur.fail("load of void")
        cur.expect("PUNCT", ",")
        slot_ty, _ = self._parse_type(cur)
        if not isinstance(slot_ty, PtrType):
            cur.fail("load source must be a pointer")
        slot = self._parse_value(cur, slot_ty, None)
        self._skip_align(cur)
        cur.expect_end()
        self._append(Load(result, ty, slot))

    def _skip_align(self, cur: _Cursor) -> None:
        if _peek_punct(cur, ","):
            save = cur.pos
            cur.next()
            if _peek_word_in(cur, {"align"}):
                cur.next()
                cur.expect("INT")
            else:
                cur.pos = save
                cur.fail("trailing tokens")

    def _parse_binop(self, cur: _Cursor, op: str, result: str) -> None:
        while _peek_word_in(cur, _BINOP_FLAGS):
            cur.next()
        ty = self._parse_int_type(cur)
        lhs = self._parse_value(cur, ty, None)
        cur.expect("PUNCT", ",")
        rhs = self._parse_value(cur, ty, None)
        cur.expect_end()
        self._append(BinOp(op, ty, lhs, rhs, result))

    def _parse_icmp(self, cur: _Cursor, result: str) -> None:
        pred = cur.expect("WORD")
        if pred.text not in ICMP_PREDS:
            cur.fail("unsupported icmp predicate", pred)
        ty = self._parse_int_type(cur)
        lhs = self._parse_value(cur, ty, None)
        cur.expect("PUNCT", ",")
        rhs = self._parse_value(cur, ty, None)
        cur.expect_end()
        self._append(ICmp(pred.text, ty, lhs, rhs, result))

    def _parse_inttoptr(self, cur: _Cursor, result: str) -> None:
        ty = self._parse_int_type(cur)
        source = self._parse_value(cur, ty, None)
        cur.expect("WORD", "to")
        to_ty, _ = self._parse_type(cur)
        if not isinstance(to_ty, PtrType):
            cur.fail("inttoptr must cast to a pointer")
        cur.expect_end()
        self._append(IntToAddr(result, ty, source))

    def _parse_ext(self, cur: _Cursor, op: str, result: str) -> None:
        from_ty = self._parse_int_type(cur)
        source = self._parse_value(cur, from_ty, None)
        cur.expect("WORD", "to")
        to_ty = self._parse_int_type(cur)
        if op == "trunc":
            if to_ty.width >= from_ty.width:
                cur.fail("trunc must narrow the width")
        elif to_ty.width <= from_ty.width:
            cur.fail(f"{op} must widen the width")
        cur.expect_end()
        self._append(Ext(op, result, source, from_ty, to_ty))

    def _parse_select(self, cur: _Cursor, result: str) -> None:
        cond_ty = self._parse_int_type(cur)
        if cond_ty.width != 1:
            cur.fail("select condition must be i1")
        cond = self._parse_value(cur, cond_ty, None)
        cur.expect("PUNCT", ",")
        ty, hint = self._parse_type(cur)
        if ty == VOID:
            cur.fail("select of void")
        if_true = self._parse_value(cur, ty, hint)
        cur.expect("PUNCT", ",")
        ty2, hint2 = self._parse_type(cur)
        if ty2 != ty:
            cur.fail("select arms must share one type")
        if_false = self._parse_value(cur, ty2, hint2)
        cur.expect_end()
        self._append(Select(result, cond, ty, if_true, if_false))

    def _parse_phi(self, cur: _Cursor, result: str, op_tok: Token) -> None:
        assert self.block is not None
        if self.block.instructions:
            cur.fail("phi must precede ordinary instructions", op_tok)
        ty, hint = self._parse_type(cur)
        if ty == VOID:
            cur.fail("phi of void")
        incomings: list[tuple[Value, str]] = []
        while True:
            cur.expect("PUNCT", "[")
            value = self._parse_value(cur, ty, hint)
            cur.expect("PUNCT", ",")
            label = self._parse_label_ref(cur)
            cur.expect("PUNCT", "]")
            incomings.append((value, label))
            if _peek_punct(cur, ","):
                cur.next()
                continue
            break
        cur.expect_end()
        phi = PhiNode(result, ty, incomings)
        self.block.phis.append(phi)
        self.phi_lines.append((self.block, phi, op_tok.line))

    def _parse_br(self, cur: _Cursor) -> None:
        assert self.block is not None
        cur.next()
        tok = cur.peek()
        if tok is not None and tok.kind == "WORD" and tok.text == "label":
            cur.next()
            label = self._parse_label_ref(cur, bare=True)
            cur.expect_end()
            self.block.terminator = Br(label)
            return
        ty = self._parse_int_type(cur)
        if ty.width != 1:
            cur.fail("conditional branch condition must be i1")
        cond = self._parse_value(cur, ty, None)
        cur.expect("PUNCT", ",")
        cur.expect("WORD", "label")
        true_label = self._parse_label_ref(cur, bare=True)
        cur.expect("PUNCT", ",")
        cur.expect("WORD", "label")
        false_label = self._parse_label_ref(cur, bare=True)
        cur.expect_end()
        self.block.terminator = CondBr(cond, true_label, false_label)

    def _parse_label_ref(self, cur: _Cursor, bare: bool = False) -> str:
        tok = cur.next()
        if tok.kind == "LOCAL":
            label = local_name(tok.text)
        elif tok.kind == "WORD" and bare:
            # tolerate labels whose % sigil was lost in transcription
            label = tok.text
        else:
            cur.fail("expected a label reference", tok)
        self.label_refs.append((label, tok.line))
        return label

    def _append(self, instr: Instruction) -> None:
        assert self.block is not None
        self.block.instructions.append(instr)

    # ------------------------------------------------------------------
    # types and values

    def _parse_type(self, cur: _Cursor) -> tuple[Type, str | None]:
        """Parse a type; returns (type, address-kind hint)."""
        tok = cur.next()
        if tok.kind == "WORD":
            ty = _TYPE_WORDS.get(tok.text)
            if ty is None:
                cur.fail(f"unknown type {tok.text!r}", tok)
            return ty, None
        if tok.kind == "LOCAL":
            name = local_name(tok.text)
            if name in _LEGACY_PTR_KINDS:
                cur.expect("PUNCT", "*")
                return PTR, _LEGACY_PTR_KINDS[name]
        cur.fail("expected a type", tok)
        raise AssertionError  # unreachable

    def _parse_int_type(self, cur: _Cursor) -> IntType:
        ty, _ = self._parse_type(cur)
        if not isinstance(ty, IntType):
            cur.fail("expected an integer type")
        assert isinstance(ty, IntType)
        return ty

    def _parse_value(self, cur: _Cursor, ty: Type, hint: str | None):
        tok = cur.next()
        if tok.kind == "LOCAL":
            name = local_name(tok.text)
            self._use(name, tok.line)
            return LocalRef(name)
        if isinstance(ty, IntType):
            if tok.kind == "INT":
                return make_int(ty.width, int(tok.text))
            cur.fail("expected an integer constant or register", tok)
        if isinstance(ty, DoubleType):
            if tok.kind == "FLOAT":
                return ConstFloat(_parse_float(tok.text))
            cur.fail("expected a floating constant or register", tok)
        if isinstance(ty, PtrType):
            if tok.kind == "WORD" and tok.text == "null":
                return StaticAddr(0, hint or QUBIT)
            if tok.kind == "WORD" and tok.text == "inttoptr":
                return self._parse_addr_const(cur, hint)
            if tok.kind == "GLOBAL":
                return GlobalRef(global_name(tok.text))
            cur.fail("expected a pointer value", tok)
        cur.fail(f"cannot read a value of type {ty}", tok)
        raise AssertionError  # unreachable

    def _parse_addr_const(self, cur: _Cursor, hint: str | None) -> StaticAddr:
        cur.expect("PUNCT", "(")
        ty = self._parse_int_type(cur)
        if ty.width != 64:
            cur.fail("address constants use i64")
        index_tok = cur.expect("INT")
        index = int(index_tok.text)
        if index < 0:
            cur.fail("static addresses must be non-negative", index_tok)
        cur.expect("WORD", "to")
        to_ty, _ = self._parse_type(cur)
        if not isinstance(to_ty, PtrType):
            cur.fail("address constants cast to a pointer")
        cur.expect("PUNCT", ")")
        return StaticAddr(index, hint or QUBIT)

    # ------------------------------------------------------------------
    # whole-module checks

    def _check_module(self, module: QirModule) -> None:
        known = module.declared_names() | module.defined_names()
        for callee, line in self.call_sites:
            if callee not in known:
                raise ParseError(
                    f"call to undeclared symbol @{callee}", line=line,
                    token=f"@{callee}")
        tagged = [f for f in module.functions if "entry_point"
                  in module.function_attributes(f)]
        if len(tagged) > 1 or (not tagged and len(module.functions) > 1):
            raise ParseError(
                "cannot identify the entry point: tag exactly one function "
                "with the entry_point attribute",
                line=self.define_lines[-1])


def coerce_static_kinds(call: Call) -> None:
    """Stamp qubit/result kinds onto constant addresses per the callee."""
    spec = intrinsics.lookup(call.callee)
    if spec is None or len(spec.arg_kinds) != len(call.args):
        return
    for kind, arg in zip(spec.arg_kinds, call.args):
        if kind in (QUBIT, RESULT) and isinstance(arg.value, StaticAddr):
            if arg.value.kind != kind:
                arg.value = StaticAddr(arg.value.index, kind)


def _parse_float(text: str) -> float:
    if text.startswith("0x"):
        # IEEE-754 bit pattern spelling of a double
        return struct.unpack(">d", bytes.fromhex(text[2:]))[0]
    return float(text)


def _peek_punct(cur: _Cursor, text: str) -> bool:
    tok = cur.peek()
    return tok is not None and tok.kind == "PUNCT" and tok.text == text


def _peek_word_in(cur: _Cursor, words) -> bool:
    tok = cur.peek()
    return tok is not None and tok.kind == "WORD" and tok.text in words


def _strip_ignored(text: str) -> str:
    """Blank out module metadata lines the grammar does not model."""
    kept = []
    for line in text.splitlines():
        stripped = line.lstrip()
        if stripped.startswith("!") or stripped.startswith("target "):
            kept.append("")
        else:
            kept.append(line)
    return "\n".join(kept)


def parse_module(text: str) -> QirModule:
    """Parse textual IR into a QirModule; raises ParseError on bad input."""
    return _ModuleParser(text).parse()
