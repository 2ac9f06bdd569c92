"""PNG I/O and quantitative-image primitives."""

from __future__ import annotations

import math
import operator
import os
from pathlib import Path

import numpy as np
from PIL import Image

from .grid import GridDims, check_same_dims, frozen


class ImageIOError(OSError):
    pass


_EIGHT_BIT_MODES = {"1", "L", "LA", "P", "PA", "RGB", "RGBA"}

INTENSITY_WEIGHTS = {
    "rec601": (0.299, 0.587, 0.114),
    "mean": (1 / 3, 1 / 3, 1 / 3),
}


def _open_png(path: str | os.PathLike) -> Image.Image:
    p = Path(path)
    if not p.is_file():
        raise ImageIOError(f"no such image file: {p}")
    try:
        img = Image.open(p)
    except Exception as exc:  # PIL raises several unrelated types
        raise ImageIOError(f"cannot decode image {p}: {exc}") from exc
    if img.format != "PNG":
        raise ImageIOError(f"not a PNG file: {p} (format {img.format})")
    if img.mode not in _EIGHT_BIT_MODES:
        raise ImageIOError(f"unsupported PNG bit depth/mode {img.mode!r}: {p}")
    return img


def png_dims(path: str | os.PathLike) -> GridDims:
    """Grid size from the PNG header, without decoding pixels."""
    with _open_png(path) as img:
        return GridDims(*img.size)


def load_png(path: str | os.PathLike) -> np.ndarray:
    """Decode an 8-bit PNG into an RGB ``uint8`` array of shape (H, W, 3).

    Grey levels are replicated into all three channels; alpha is discarded.
    """
    with _open_png(path) as img:
        try:
            rgb = np.asarray(img.convert("RGB"), dtype=np.uint8).copy()
        except Exception as exc:
            raise ImageIOError(f"cannot decode image {path}: {exc}") from exc
    return frozen(rgb)


def to_gray8(img: np.ndarray) -> np.ndarray:
    if img.dtype == bool:
        return np.where(img, 255, 0).astype(np.uint8)
    v = np.asarray(img, dtype=np.float64)
    finite = np.isfinite(v)
    out = np.zeros(v.shape, dtype=np.uint8)
    if finite.any():
        lo, hi = float(v[finite].min()), float(v[finite].max())
        if hi > lo:
            scaled = (v[finite] - lo) * (255.0 / (hi - lo))
            out[finite] = np.floor(scaled + 0.5).astype(np.uint8)
    out[np.isposinf(v)] = 255
    return out


def save_png(path: str | os.PathLike, img: np.ndarray) -> None:
    """Write a boolean (0/255) or min-max rescaled scalar image as 8-bit grey."""
    p = Path(path)
    try:
        p.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(to_gray8(img), mode="L").save(p, format="PNG")
    except OSError as exc:
        raise ImageIOError(f"cannot write {p}: {exc}") from exc


def intensity(c: np.ndarray, convention: str = "rec601") -> np.ndarray:
    try:
        wr, wg, wb = INTENSITY_WEIGHTS[convention]
    except KeyError:
        raise ValueError(f"unknown intensity convention {convention!r}") from None
    rgb = c.astype(np.float64)
    return frozen(wr * rgb[..., 0] + wg * rgb[..., 1] + wb * rgb[..., 2])


_CHANNELS = {"red": 0, "green": 1, "blue": 2}


def color_proj(c: np.ndarray, channel: str) -> np.ndarray:
    return frozen(c[..., _CHANNELS[channel]].astype(np.float64))


def min_val(a: np.ndarray) -> float:
    return float(np.min(a))


def max_val(a: np.ndarray) -> float:
    return float(np.max(a))


_ARITH = {"+": operator.add, "-": operator.sub, "*": operator.mul, "/": operator.truediv}
_COMPARE = {">": operator.gt, "<": operator.lt, ">=": operator.ge, "<=": operator.le}


def voxelwise(op: str, lhs: np.ndarray, rhs: np.ndarray | float) -> np.ndarray:
    """Pointwise arithmetic (scalar result) or comparison (boolean result)."""
    if isinstance(rhs, np.ndarray):
        check_same_dims(lhs, rhs)
    else:
        rhs = float(rhs)
    if op in _COMPARE:
        return frozen(_COMPARE[op](lhs, rhs))
    if op in _ARITH:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = _ARITH[op](lhs, rhs)
        if np.isnan(out).any():
            raise ArithmeticError(f"voxelwise {op} produced an undefined value (0/0 or inf-inf)")
        return frozen(np.asarray(out, dtype=np.float64))
    raise ValueError(f"unknown voxelwise operator {op!r}")


def num_arith(op: str, x: float, y: float) -> float | bool:
    """Scalar arithmetic and comparison; x/0 is a signed infinity, 0/0 an error."""
    x, y = float(x), float(y)
    if op in _COMPARE:
        return _COMPARE[op](x, y)
    if op == "/":
        if y == 0:
            if x == 0 or math.isnan(x):
                raise ZeroDivisionError("0 ./. 0 is undefined")
            return math.copysign(math.inf, x) * (math.copysign(1.0, y))
        return x / y
    if op in _ARITH:
        r = _ARITH[op](x, y)
        if math.isnan(r):
            raise ArithmeticError(f"{x} {op} {y} is undefined")
        return r
    raise ValueError(f"unknown numeric operator {op!r}")


def if_b(cond: bool, t: np.ndarray, f: np.ndarray) -> np.ndarray:
    check_same_dims(t, f)
    return t if cond else f
