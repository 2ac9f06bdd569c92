"""Name resolution, let-inlining and hash-consing into an expression DAG.

Function applications are inlined at expansion time, so the resulting graph
only contains builtin operators, literals and loads. Structurally identical
subexpressions share one node. Arguments always receive smaller UIDs than the
nodes that use them, so ascending UID order is a valid evaluation order.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from . import ast
from .builtins import BUILTINS, resolve
from .errors import ExpansionError, Location, TypeCheckError
from .parser import parse_source
from .types import BOOL, MODEL, NUMBER, STRING, is_valuation

_VAR = re.compile(r"\$(?:\{([A-Za-z][A-Za-z0-9_]*)\}|([A-Za-z][A-Za-z0-9_]*))")


def substitute_vars(literal: str, bindings: Mapping[str, str], loc: Location | None = None) -> str:
    """Replace ``$NAME`` (longest identifier match) and ``${NAME}``."""

    def repl(m: re.Match) -> str:
        name = m.group(1) or m.group(2)
        if name not in bindings:
            raise ExpansionError(f"unbound variable ${name} in {literal!r}", loc)
        return str(bindings[name])

    return _VAR.sub(repl, literal)


def make_bindings(defines: Mapping[str, str] | None = None, environ: Mapping[str, str] | None = None) -> dict[str, str]:
    """Process environment overlaid with explicit definitions (which win)."""
    out = dict(os.environ if environ is None else environ)
    out.update(defines or {})
    return out


@dataclass(frozen=True)
class Node:
    uid: int
    op: str  # builtin name, "const" or "load"
    args: tuple[int, ...]
    type: str
    payload: Any = None
    loc: Location | None = None


@dataclass(frozen=True)
class Root:
    kind: str  # "save" or "print"
    target: str  # output path or print label
    uid: int
    loc: Location


@dataclass
class ExprGraph:
    nodes: list[Node] = field(default_factory=list)
    roots: list[Root] = field(default_factory=list)
    loads: list[tuple[str, Location]] = field(default_factory=list)

    def uid_of(self, op: str, *args: int, payload: Any = None) -> int | None:
        for n in self.nodes:
            if n.op == op and n.args == args and n.payload == payload:
                return n.uid
        return None

    def demanded(self) -> list[int]:
        """UIDs reachable from the roots, ascending."""
        seen: set[int] = set()
        stack = [r.uid for r in self.roots]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(self.nodes[u].args)
        return sorted(seen)

    def check_topological(self) -> None:
        for i, n in enumerate(self.nodes):
            if n.uid != i or any(a >= n.uid for a in n.args):
                raise AssertionError(f"node {n.uid} violates UID ordering")


@dataclass(frozen=True)
class _Function:
    name: str
    params: tuple[str, ...]
    body: ast.Expr
    env: "_Env"
    loc: Location


@dataclass(frozen=True)
class _Value:
    uid: int


class _Env:
    """Persistent name -> binding map."""

    __slots__ = ("name", "binding", "parent")

    def __init__(self, name=None, binding=None, parent=None):
        self.name, self.binding, self.parent = name, binding, parent

    def bind(self, name: str, binding) -> "_Env":
        return _Env(name, binding, self)

    def lookup(self, name: str):
        env = self
        while env is not None:
            if env.name == name:
                return env.binding
            env = env.parent
        return None


class Expander:
    def __init__(self, bindings: Mapping[str, str] | None = None, search_path: list[str | os.PathLike] | None = None):
        self.bindings = dict(bindings or {})
        self.search_path = [Path(p) for p in (search_path or [])]
        self.graph = ExprGraph()
        self._keys: dict[tuple, int] = {}
        self._calls: dict[tuple[int, tuple[int, ...]], int] = {}
        self._active: list[str] = []
        self._imported: set[Path] = set()
        self._importing: list[Path] = []

    # graph construction

    def node(self, op: str, args: tuple[int, ...], type_: str, payload: Any = None, loc: Location | None = None) -> int:
        key = (op, args, payload if op != "const" else (type(payload).__name__, payload))
        uid = self._keys.get(key)
        if uid is None:
            uid = len(self.graph.nodes)
            self.graph.nodes.append(Node(uid, op, args, type_, payload, loc))
            self._keys[key] = uid
        return uid

    def _builtin(self, name: str, args: tuple[int, ...], loc: Location) -> int:
        types = tuple(self.graph.nodes[a].type for a in args)
        sig = resolve(name, types)
        if sig is None:
            arities = sorted({len(s.args) for s in BUILTINS[name]})
            if len(args) not in arities:
                raise ExpansionError(
                    f"{name} expects {' or '.join(map(str, arities))} argument(s), got {len(args)}", loc
                )
            wanted = " or ".join("(" + ", ".join(s.args) + ")" for s in BUILTINS[name])
            raise TypeCheckError(f"{name} cannot be applied to ({', '.join(types)}); expected {wanted}", loc)
        return self.node(name, args, sig.result, loc=loc)

    # expressions

    def expr(self, e: ast.Expr, env: _Env) -> int:
        if isinstance(e, ast.Number):
            return self.node("const", (), NUMBER, e.value, e.loc)
        if isinstance(e, ast.String):
            return self.node("const", (), STRING, e.value, e.loc)
        if isinstance(e, ast.Paren):
            return self.expr(e.inner, env)
        if isinstance(e, ast.Identifier):
            return self._apply(e.name, (), e.loc, env)
        if isinstance(e, ast.Application):
            return self._apply(e.head, e.args, e.loc, env)
        if isinstance(e, ast.InfixApp):
            args = (self.expr(e.lhs, env), self.expr(e.rhs, env))
            return self._builtin(e.op, args, e.loc)
        if isinstance(e, ast.PrefixApp):
            return self._builtin(e.op, (self.expr(e.arg, env),), e.loc)
        raise TypeError(f"not an expression: {e!r}")

    def _apply(self, name: str, arg_exprs: tuple, loc: Location, env: _Env) -> int:
        binding = env.lookup(name)
        if isinstance(binding, _Value):
            if arg_exprs:
                raise ExpansionError(f"{name} is not a function", loc)
            return binding.uid
        if isinstance(binding, _Function):
            if len(arg_exprs) != len(binding.params):
                raise ExpansionError(
                    f"{name} expects {len(binding.params)} argument(s), got {len(arg_exprs)}", loc
                )
            args = tuple(self.expr(a, env) for a in arg_exprs)
            return self._call(binding, args)
        if name in BUILTINS:
            args = tuple(self.expr(a, env) for a in arg_exprs)
            return self._builtin(name, args, loc)
        if name in self._active:
            raise ExpansionError(f"recursive definition of {name!r} is not supported", loc)
        raise ExpansionError(f"unbound identifier {name!r}", loc)

    def _call(self, fn: _Function, args: tuple[int, ...]) -> int:
        key = (id(fn), args)
        if key in self._calls:
            return self._calls[key]
        env = fn.env
        for p, a in zip(fn.params, args):
            env = env.bind(p, _Value(a))
        self._active.append(fn.name)
        try:
            uid = self.expr(fn.body, env)
        finally:
            self._active.pop()
        self._calls[key] = uid
        return uid

    # commands

    def commands(self, cmds: list[ast.Command], env: _Env, base_dir: Path, library: bool = False) -> _Env:
        for c in cmds:
            if library and not isinstance(c, (ast.LetDecl, ast.Import)):
                raise ExpansionError("imported files may only contain let and import commands", c.loc)
            if isinstance(c, ast.LetDecl):
                env = env.bind(c.name, _Function(c.name, c.params, c.body, env, c.loc))
            elif isinstance(c, ast.Load):
                path = substitute_vars(c.path, self.bindings, c.loc)
                uid = self.node("load", (), MODEL, path, c.loc)
                self.graph.loads.append((path, c.loc))
                env = env.bind(c.name, _Value(uid))
            elif isinstance(c, ast.Save):
                path = substitute_vars(c.path, self.bindings, c.loc)
                uid = self.expr(c.expr, env)
                t = self.graph.nodes[uid].type
                if not is_valuation(t):
                    raise TypeCheckError(f"save requires an image (Valuation), got {t}", c.loc)
                self.graph.roots.append(Root("save", path, uid, c.loc))
            elif isinstance(c, ast.Print):
                uid = self.expr(c.expr, env)
                t = self.graph.nodes[uid].type
                if t not in (NUMBER, BOOL):
                    raise TypeCheckError(f"print requires a Number or Bool, got {t}", c.loc)
                self.graph.roots.append(Root("print", c.label, uid, c.loc))
            elif isinstance(c, ast.Import):
                env = self._import(c, env, base_dir)
        return env

    def _import(self, c: ast.Import, env: _Env, base_dir: Path) -> _Env:
        rel = substitute_vars(c.path, self.bindings, c.loc)
        for d in [base_dir, *self.search_path]:
            cand = (d / rel).resolve()
            if cand.is_file():
                break
        else:
            raise ExpansionError(f"cannot find imported file {rel!r}", c.loc)
        if cand in self._importing:
            raise ExpansionError(f"import cycle through {cand}", c.loc)
        if cand in self._imported:
            return env
        self._importing.append(cand)
        try:
            cmds = parse_source(cand.read_text(encoding="utf-8"), str(cand))
            env = self.commands(cmds, env, cand.parent, library=True)
        finally:
            self._importing.pop()
        self._imported.add(cand)
        return env


def expand(
    cmds: list[ast.Command],
    bindings: Mapping[str, str] | None = None,
    base_dir: str | os.PathLike = ".",
    search_path: list[str | os.PathLike] | None = None,
) -> ExprGraph:
    ex = Expander(bindings, search_path)
    ex.commands(cmds, _Env(), Path(base_dir))
    return ex.graph
