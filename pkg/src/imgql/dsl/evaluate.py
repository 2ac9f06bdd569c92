"""Memoizing, dependency-driven evaluation of an expression DAG."""

from __future__ import annotations

import logging
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .. import imaging
from ..grid import DimensionError
from .builtins import EvalContext, EvalOptions, load_model, resolve
from .errors import EvaluationError, ImgQLError
from .expand import ExprGraph, Node
from .types import BOOL

log = logging.getLogger(__name__)


@dataclass
class RunResult:
    values: dict[int, Any]
    evaluations: list[int]
    prints: list[tuple[str, Any]] = field(default_factory=list)
    saved: list[str] = field(default_factory=list)


def format_value(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return f"{float(v):.6g}"


def _model_dims(graph: ExprGraph, ctx: EvalContext) -> None:
    for path, loc in graph.loads:
        try:
            dims = imaging.png_dims(path)
        except imaging.ImageIOError as exc:
            raise EvaluationError(str(exc), loc) from exc
        if ctx.dims is None:
            ctx.dims = dims
        elif dims != ctx.dims:
            raise EvaluationError(
                f"{path} is {dims.width}x{dims.height} but the model is {ctx.dims.width}x{ctx.dims.height}", loc
            )


def _compute(node: Node, graph: ExprGraph, values: dict[int, Any], ctx: EvalContext) -> Any:
    if node.op == "const":
        return node.payload
    if node.op == "load":
        return load_model(ctx, node.payload)
    types = tuple(graph.nodes[a].type for a in node.args)
    sig = resolve(node.op, types)
    return sig.fn(ctx, *(values[a] for a in node.args))


def evaluate(
    graph: ExprGraph,
    options: EvalOptions | None = None,
    emit: Callable[[str], None] | None = print,
    perform_io: bool = True,
) -> RunResult:
    """Evaluate every node demanded by a save or print exactly once.

    Saves and prints happen after evaluation, in file order, so logs and
    outputs do not depend on the worker count.
    """
    ctx = EvalContext(options or EvalOptions())
    _model_dims(graph, ctx)
    order = graph.demanded()
    root_uids = {r.uid for r in graph.roots}
    pending = {u: len(set(graph.nodes[u].args)) for u in order}
    consumers: dict[int, list[int]] = {u: [] for u in order}
    for u in order:
        for a in set(graph.nodes[u].args):
            consumers[a].append(u)
    remaining = {u: len(consumers[u]) for u in order}
    values: dict[int, Any] = {}
    evaluations = [0] * len(graph.nodes)
    start = time.perf_counter()

    def run(u: int) -> Any:
        node = graph.nodes[u]
        try:
            return _compute(node, graph, values, ctx)
        except ImgQLError:
            raise
        except (ArithmeticError, ValueError, OSError, DimensionError, RuntimeError, TypeError) as exc:
            raise EvaluationError(f"while evaluating {node.op}: {exc}", node.loc) from exc

    def finish(u: int, value: Any) -> list[int]:
        values[u] = value
        evaluations[u] += 1
        ready = []
        for a in set(graph.nodes[u].args):
            remaining[a] -= 1
            if remaining[a] == 0 and a not in root_uids:
                del values[a]
        for c in consumers[u]:
            pending[c] -= 1
            if pending[c] == 0:
                ready.append(c)
        return ready

    threads = max(1, int(ctx.options.threads))
    if threads == 1:
        for u in order:
            finish(u, run(u))
    else:
        ready = sorted(u for u in order if pending[u] == 0)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            running: dict[Any, int] = {}
            while ready or running:
                while ready and len(running) < threads:
                    u = ready.pop(0)
                    running[pool.submit(run, u)] = u
                done, _ = wait(running, return_when=FIRST_COMPLETED)
                for fut in sorted(done, key=running.get):
                    u = running.pop(fut)
                    exc = fut.exception()
                    if exc is not None:
                        for other in running:
                            other.cancel()
                        raise exc
                    ready.extend(finish(u, fut.result()))
                ready.sort()
    log.debug("evaluated %d nodes in %.1f ms", len(order), 1000 * (time.perf_counter() - start))

    result = RunResult({u: values[u] for u in root_uids}, evaluations)
    for root in graph.roots:
        value = values[root.uid]
        elapsed = 1000 * (time.perf_counter() - start)
        if root.kind == "print":
            if graph.nodes[root.uid].type == BOOL:
                value = bool(value)
            result.prints.append((root.target, value))
            if emit is not None:
                emit(f"{root.target}={format_value(value)}")
            log.info("[%.0f ms] print %s", elapsed, root.target)
        else:
            if perform_io:
                try:
                    imaging.save_png(root.target, value)
                except imaging.ImageIOError as exc:
                    raise EvaluationError(str(exc), root.loc) from exc
            result.saved.append(root.target)
            log.info("[%.0f ms] save %s", elapsed, root.target)
    return result
