"""Exception types shared across the toolkit."""

from __future__ import annotations


class QirError(Exception):
    """Base class for all toolkit errors."""


class ParseError(QirError):
    """Source text outside the supported grammar.

    Carries the 1-based line (and column where known) of the offending
    token so callers can point at the exact input location.
    """

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, token: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        loc = "input" if line is None else f"line {line}"
        if column is not None:
            loc += f", column {column}"
        detail = f" near {token!r}" if token else ""
        super().__init__(f"{loc}: {message}{detail}")


class ConversionError(QirError):
    """Module or circuit cannot be converted to the requested form."""


class TransformError(QirError):
    """A rewrite cannot be applied; ``reason`` is a stable machine code.

    Reasons used by the transforms:
      CapExceeded       a loop ran past the configured iteration cap
      DataDependent     control flow depends on a measurement outcome
      EscapingHandle    a qubit handle flows outside intrinsic arguments
      FeedbackRequired  the program is not expressible in the base profile
    plus precondition codes such as NotStraightLine and
    NonConstantAllocation.
    """

    def __init__(self, reason: str, message: str):
        self.reason = reason
        self.message = message
        super().__init__(f"{reason}: {message}")


class ExecutionError(QirError):
    """Raised while interpreting a module.

    Reasons: UnknownIntrinsic, QubitLimit, ReadBeforeMeasure, StepLimit,
    plus defensive codes such as UseAfterRelease and BadOperand.
    """

    def __init__(self, reason: str, message: str,
                 shot: int | None = None, location: str | None = None):
        self.reason = reason
        self.message = message
        self.shot = shot
        self.location = location
        where = ""
        if shot is not None:
            where += f" [shot {shot}]"
        if location is not None:
            where += f" [{location}]"
        super().__init__(f"{reason}: {message}{where}")
