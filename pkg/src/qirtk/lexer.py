"""Line-oriented tokenizer for the textual IR subset.

The accepted grammar is statement-per-line, so tokens never span lines and
every token carries the 1-based line and column it started at. Comments run
from ``;`` to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN_RE = re.compile(
    r"""
      (?P<SKIP>\s+)
    | (?P<COMMENT>;.*)
    | (?P<LOCAL>%(?:[A-Za-z$._0-9]+|"[^"]*"))
    | (?P<GLOBAL>@(?:[A-Za-z$._0-9]+|"[^"]*"))
    | (?P<ATTRID>\#\d+)
    | (?P<FLOAT>-?\d+\.\d*(?:[eE][-+]?\d+)?|-?\d+[eE][-+]?\d+|0x[0-9A-Fa-f]{16})
    | (?P<INT>-?\d+)
    | (?P<STRING>"[^"]*")
    | (?P<WORD>[A-Za-z$._][A-Za-z$._0-9]*)
    | (?P<PUNCT>[(){}\[\],=:*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize_line(text: str, line_no: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unrecognized character", line=line_no,
                             column=pos + 1, token=text[pos])
        kind = m.lastgroup or ""
        if kind == "COMMENT":
            break
        if kind != "SKIP":
            tokens.append(Token(kind, m.group(), line_no, m.start() + 1))
        pos = m.end()
    return tokens


def tokenize(text: str) -> list[list[Token]]:
    """Tokenize full source into one token list per nonempty line."""
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        tokens = tokenize_line(line, i)
        if tokens:
            out.append(tokens)
    return out


def local_name(token_text: str) -> str:
    """Strip the ``%`` sigil (and quotes) from a local reference."""
    name = token_text[1:]
    if name.startswith('"') and name.endswith('"'):
        name = name[1:-1]
    return name


def global_name(token_text: str) -> str:
    name = token_text[1:]
    if name.startswith('"') and name.endswith('"'):
        name = name[1:-1]
    return name
