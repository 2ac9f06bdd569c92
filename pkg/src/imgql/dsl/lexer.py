from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import LexError, Location

KEYWORDS = {"let", "load", "save", "print", "import"}

# longest spelling first so that ".<=." wins over ".<." and "<" etc.
OPERATORS = sorted(
    ["&", "|", "!", ">", "<", ">.", "<.", "+.", ".*.", ".+.", "./.", ".-.", ".<.", ".>."],
    key=len,
    reverse=True,
)
PUNCT = {"(", ")", ",", "="}

_NUMBER = re.compile(r"\d+(\.\d+)?([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Token:
    kind: str  # keyword, ident, number, string, op, punct, eof
    text: str
    loc: Location

    def __repr__(self) -> str:
        return f"{self.kind}:{self.text}"


def tokenize(source: str, filename: str = "<script>") -> list[Token]:
    tokens: list[Token] = []
    i, line, line_start = 0, 1, 0
    n = len(source)
    while i < n:
        ch = source[i]
        loc = Location(filename, line, i - line_start + 1)
        if ch == "\n":
            i += 1
            line += 1
            line_start = i
            continue
        if ch.isspace():
            i += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] != '"' and source[j] != "\n":
                j += 1
            if j >= n or source[j] != '"':
                raise LexError("unterminated string literal", loc)
            tokens.append(Token("string", source[i + 1 : j], loc))
            i = j + 1
            continue
        m = _IDENT.match(source, i)
        if m:
            word = m.group()
            if word in KEYWORDS:
                kind = "keyword"
            elif word == "S":
                kind = "op"
            else:
                kind = "ident"
            tokens.append(Token(kind, word, loc))
            i = m.end()
            continue
        m = _NUMBER.match(source, i)
        if m:
            tokens.append(Token("number", m.group(), loc))
            i = m.end()
            continue
        for op in OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("op", op, loc))
                i += len(op)
                break
        else:
            if ch in PUNCT:
                tokens.append(Token("punct", ch, loc))
                i += 1
                continue
            raise LexError(f"unexpected character {ch!r}", loc)
    tokens.append(Token("eof", "", Location(filename, line, n - line_start + 1)))
    return tokens
