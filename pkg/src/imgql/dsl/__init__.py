"""The ImgQL script language: parsing, expansion into a shared DAG, evaluation."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Callable, Mapping

from .builtins import EvalOptions, builtin_table
from .errors import (
    EvaluationError,
    ExpansionError,
    ImgQLError,
    LexError,
    Location,
    ParseError,
    TypeCheckError,
)
from .evaluate import RunResult, evaluate, format_value
from .expand import ExprGraph, expand, make_bindings, substitute_vars
from .lexer import tokenize
from .parser import parse, parse_expr, parse_source


def compile_file(
    path: str | os.PathLike,
    bindings: Mapping[str, str] | None = None,
    search_path: list[str | os.PathLike] | None = None,
) -> ExprGraph:
    """Parse and expand a script file; imports resolve next to it, then in ``search_path``."""
    from ..corpus import corpus_dir

    p = Path(path)
    cmds = parse_source(p.read_text(encoding="utf-8"), str(p))
    paths = list(search_path) if search_path is not None else [corpus_dir()]
    return expand(cmds, bindings, p.parent, paths)


def run_file(
    path: str | os.PathLike,
    bindings: Mapping[str, str] | None = None,
    options: EvalOptions | None = None,
    search_path: list[str | os.PathLike] | None = None,
    emit: Callable[[str], None] | None = print,
) -> RunResult:
    return evaluate(compile_file(path, bindings, search_path), options, emit=emit)


__all__ = [
    "EvalOptions",
    "EvaluationError",
    "ExpansionError",
    "ExprGraph",
    "ImgQLError",
    "LexError",
    "Location",
    "ParseError",
    "RunResult",
    "TypeCheckError",
    "builtin_table",
    "compile_file",
    "evaluate",
    "expand",
    "format_value",
    "make_bindings",
    "parse",
    "parse_expr",
    "parse_source",
    "run_file",
    "substitute_vars",
    "tokenize",
]
