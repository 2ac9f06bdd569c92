"""Native operators available to scripts, with their type signatures.

Several names are overloaded on argument types (``&`` on images and on
truth values, ``>`` against an image or a number); the first signature whose
argument types match is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .. import grid, imaging, metrics, spatial, texture
from .types import BOOL, MODEL, NUMBER, VBOOL, VNUM


@dataclass
class EvalOptions:
    adjacency: grid.Adjacency = grid.DEFAULT_ADJACENCY
    intensity: str = "rec601"
    oracle_texture: bool = False
    threads: int = 1


@dataclass
class EvalContext:
    options: EvalOptions = field(default_factory=EvalOptions)
    dims: grid.GridDims | None = None

    def require_dims(self) -> grid.GridDims:
        if self.dims is None:
            raise RuntimeError("no image has been loaded; the grid size is unknown")
        return self.dims


@dataclass(frozen=True)
class Signature:
    name: str
    args: tuple[str, ...]
    result: str
    fn: Callable[..., Any]


BUILTINS: dict[str, list[Signature]] = {}


def _register(name: str, args: tuple[str, ...], result: str):
    def deco(fn):
        BUILTINS.setdefault(name, []).append(Signature(name, args, result, fn))
        return fn

    return deco


def resolve(name: str, arg_types: tuple[str, ...]) -> Signature | None:
    for sig in BUILTINS.get(name, ()):
        if sig.args == arg_types:
            return sig
    return None


def builtin_table() -> dict[str, list[tuple[tuple[str, ...], str]]]:
    return {name: [(s.args, s.result) for s in sigs] for name, sigs in BUILTINS.items()}


def _adj(ctx: EvalContext) -> grid.Adjacency:
    return ctx.options.adjacency


def _num(v: Any) -> float:
    return float(v)


# model projections
@_register("intensity", (MODEL,), VNUM)
def _intensity(ctx, c):
    return imaging.intensity(c, ctx.options.intensity)


for _ch in ("red", "green", "blue"):
    _register(_ch, (MODEL,), VNUM)(lambda ctx, c, _ch=_ch: imaging.color_proj(c, _ch))


@_register("min", (VNUM,), NUMBER)
def _min(ctx, a):
    return imaging.min_val(a)


@_register("max", (VNUM,), NUMBER)
def _max(ctx, a):
    return imaging.max_val(a)


@_register("volume", (VBOOL,), NUMBER)
def _volume(ctx, b):
    return grid.volume(b)


@_register("border", (), VBOOL)
def _border(ctx):
    return grid.border(ctx.require_dims())


@_register("tt", (), VBOOL)
def _tt(ctx):
    return grid.true_image(ctx.require_dims())


@_register("ff", (), VBOOL)
def _ff(ctx):
    return grid.false_image(ctx.require_dims())


@_register("ifB", (BOOL, VBOOL, VBOOL), VBOOL)
def _ifb(ctx, cond, t, f):
    return imaging.if_b(cond, t, f)


# spatial logic
@_register("near", (VBOOL,), VBOOL)
def _near(ctx, b):
    return spatial.closure(b, _adj(ctx))


@_register("interior", (VBOOL,), VBOOL)
def _interior(ctx, b):
    return spatial.interior(b, _adj(ctx))


@_register("touch", (VBOOL, VBOOL), VBOOL)
def _touch(ctx, a, b):
    return spatial.touch(a, b, _adj(ctx))


@_register("grow", (VBOOL, VBOOL), VBOOL)
def _grow(ctx, a, b):
    return spatial.grow(a, b, _adj(ctx))


@_register("S", (VBOOL, VBOOL), VBOOL)
def _surrounded(ctx, a, b):
    return spatial.surrounded(a, b, _adj(ctx))


# formula first, radius second, as the segmentation scripts call it
@_register("smoothen", (VBOOL, NUMBER), VBOOL)
def _smoothen(ctx, b, r):
    return spatial.smoothen(_num(r), b)


@_register("maxvol", (VBOOL,), VBOOL)
def _maxvol(ctx, b):
    return spatial.maxvol(b, _adj(ctx))


@_register("distleq", (NUMBER, VBOOL), VBOOL)
def _distleq(ctx, r, b):
    return spatial.distleq(_num(r), b)


@_register("distlt", (NUMBER, VBOOL), VBOOL)
def _distlt(ctx, r, b):
    return spatial.distlt(_num(r), b)


@_register("distgeq", (NUMBER, VBOOL), VBOOL)
def _distgeq(ctx, r, b):
    return spatial.distgeq(_num(r), b)


@_register("crossCorrelation", (NUMBER, VNUM, VNUM, VBOOL, NUMBER, NUMBER, NUMBER), VNUM)
def _cross_correlation(ctx, r, a, b, region, m, M, k):
    if float(k) != int(k):
        raise ValueError(f"crossCorrelation bin count must be an integer, got {k}")
    w = texture.WindowSpec(_num(r))
    if ctx.options.oracle_texture:
        return texture.cross_correlation_map_naive(w, a, b, region, m, M, int(k))
    return texture.cross_correlation_map(w, a, b, region, m, M, int(k), bands=ctx.options.threads)


@_register("ppM", (VBOOL,), NUMBER)
def _ppm(ctx, b):
    return metrics.ppm(b, _adj(ctx))


# boolean connectives
@_register("&", (VBOOL, VBOOL), VBOOL)
def _and(ctx, a, b):
    return grid.bool_and(a, b)


@_register("&", (BOOL, BOOL), BOOL)
def _and_b(ctx, a, b):
    return bool(a and b)


@_register("|", (VBOOL, VBOOL), VBOOL)
def _or(ctx, a, b):
    return grid.bool_or(a, b)


@_register("|", (BOOL, BOOL), BOOL)
def _or_b(ctx, a, b):
    return bool(a or b)


@_register("!", (VBOOL,), VBOOL)
def _not(ctx, a):
    return grid.bool_not(a)


@_register("!", (BOOL,), BOOL)
def _not_b(ctx, a):
    return not a


# image/number operators
_register(">.", (VNUM, NUMBER), VBOOL)(lambda ctx, a, c: imaging.voxelwise(">", a, c))
_register("<.", (VNUM, NUMBER), VBOOL)(lambda ctx, a, c: imaging.voxelwise("<", a, c))
_register(">", (VNUM, VNUM), VBOOL)(lambda ctx, a, b: imaging.voxelwise(">", a, b))
_register(">", (VNUM, NUMBER), VBOOL)(lambda ctx, a, c: imaging.voxelwise(">", a, c))
_register("<", (VNUM, VNUM), VBOOL)(lambda ctx, a, b: imaging.voxelwise("<", a, b))
_register("<", (VNUM, NUMBER), VBOOL)(lambda ctx, a, c: imaging.voxelwise("<", a, c))
_register("+.", (VNUM, NUMBER), VNUM)(lambda ctx, a, c: imaging.voxelwise("+", a, c))

# number/number operators
_register(".+.", (NUMBER, NUMBER), NUMBER)(lambda ctx, x, y: imaging.num_arith("+", x, y))
_register(".-.", (NUMBER, NUMBER), NUMBER)(lambda ctx, x, y: imaging.num_arith("-", x, y))
_register(".*.", (NUMBER, NUMBER), NUMBER)(lambda ctx, x, y: imaging.num_arith("*", x, y))
_register("./.", (NUMBER, NUMBER), NUMBER)(lambda ctx, x, y: imaging.num_arith("/", x, y))
_register(".<.", (NUMBER, NUMBER), BOOL)(lambda ctx, x, y: imaging.num_arith("<", x, y))
_register(".>.", (NUMBER, NUMBER), BOOL)(lambda ctx, x, y: imaging.num_arith(">", x, y))


def load_model(ctx: EvalContext, path: str) -> np.ndarray:
    img = imaging.load_png(path)
    dims = grid.GridDims.of(img)
    if ctx.dims is not None and dims != ctx.dims:
        raise grid.DimensionError(
            f"{path} is {dims.width}x{dims.height} but the model is {ctx.dims.width}x{ctx.dims.height}"
        )
    return img
