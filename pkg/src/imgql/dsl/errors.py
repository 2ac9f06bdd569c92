from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Location:
    file: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


class ImgQLError(Exception):
    """Base error; carries the source location when one is known."""

    def __init__(self, message: str, loc: Location | None = None):
        self.message = message
        self.loc = loc
        super().__init__(f"{loc}: {message}" if loc else message)


class LexError(ImgQLError):
    pass


class ParseError(ImgQLError):
    pass


class ExpansionError(ImgQLError):
    """Unbound names, arity mismatches, import problems."""


class TypeCheckError(ImgQLError):
    pass


class EvaluationError(ImgQLError):
    pass
