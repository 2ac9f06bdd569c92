from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Location


@dataclass(frozen=True)
class Number:
    value: float
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class String:
    value: str
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class Identifier:
    name: str
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class Application:
    head: str
    args: tuple
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class InfixApp:
    op: str
    lhs: object
    rhs: object
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class PrefixApp:
    op: str
    arg: object
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class Paren:
    inner: object
    loc: Location = field(compare=False)


Expr = Number | String | Identifier | Application | InfixApp | PrefixApp | Paren


@dataclass(frozen=True)
class LetDecl:
    name: str
    params: tuple[str, ...]
    body: Expr
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class Load:
    name: str
    path: str
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class Save:
    path: str
    expr: Expr
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class Print:
    label: str
    expr: Expr
    loc: Location = field(compare=False)


@dataclass(frozen=True)
class Import:
    path: str
    loc: Location = field(compare=False)


Command = LetDecl | Load | Save | Print | Import


def unparse(e: Expr) -> str:
    """Compact fully-parenthesised rendering, handy in tests and diagnostics."""
    if isinstance(e, Number):
        return repr(e.value)
    if isinstance(e, String):
        return f'"{e.value}"'
    if isinstance(e, Identifier):
        return e.name
    if isinstance(e, Application):
        return f"{e.head}({', '.join(unparse(a) for a in e.args)})"
    if isinstance(e, InfixApp):
        return f"{e.op}({unparse(e.lhs)}, {unparse(e.rhs)})"
    if isinstance(e, PrefixApp):
        return f"{e.op}({unparse(e.arg)})"
    if isinstance(e, Paren):
        return unparse(e.inner)
    raise TypeError(e)
