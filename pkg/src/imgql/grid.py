"""Finite 2D grids viewed as quasi-discrete closure spaces.

Images are plain numpy arrays indexed ``[y, x]`` (row-major, y downward):

* boolean images: ``bool`` arrays of shape ``(height, width)``
* scalar images: ``float64`` arrays of shape ``(height, width)``; ``+inf`` allowed
* colour images: ``uint8`` arrays of shape ``(height, width, 3)``

Every constructor here returns a read-only array so images can be shared
between evaluation threads without copying.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np


class DimensionError(ValueError):
    """Raised when images that must share a grid do not."""


class GridDims(NamedTuple):
    width: int
    height: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    @property
    def size(self) -> int:
        return self.width * self.height

    @classmethod
    def of(cls, img: np.ndarray) -> "GridDims":
        return cls(int(img.shape[1]), int(img.shape[0]))


def make_dims(width: int, height: int) -> GridDims:
    if width < 1 or height < 1:
        raise ValueError(f"grid dimensions must be positive, got {width}x{height}")
    return GridDims(int(width), int(height))


class Adjacency(enum.Enum):
    """Voxel adjacency. Both relations are reflexive and symmetric."""

    ORTHOGONAL = 4
    ORTHODIAGONAL = 8

    @classmethod
    def parse(cls, value: "Adjacency | int | str") -> "Adjacency":
        if isinstance(value, Adjacency):
            return value
        text = str(value).strip().lower()
        if text in ("4", "orthogonal"):
            return cls.ORTHOGONAL
        if text in ("8", "orthodiagonal"):
            return cls.ORTHODIAGONAL
        raise ValueError(f"unknown adjacency {value!r} (expected 4 or 8)")

    def offsets(self) -> list[tuple[int, int]]:
        """Non-zero (dy, dx) steps to adjacent voxels."""
        steps = [(-1, 0), (1, 0), (0, -1), (0, 1)]
        if self is Adjacency.ORTHODIAGONAL:
            steps += [(-1, -1), (-1, 1), (1, -1), (1, 1)]
        return steps

    def structure(self) -> np.ndarray:
        """3x3 structuring element, centre included."""
        if self is Adjacency.ORTHODIAGONAL:
            return np.ones((3, 3), dtype=bool)
        return np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


DEFAULT_ADJACENCY = Adjacency.ORTHODIAGONAL


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def check_same_dims(*imgs: np.ndarray) -> GridDims:
    dims = GridDims.of(imgs[0])
    for other in imgs[1:]:
        odims = GridDims.of(other)
        if odims != dims:
            raise DimensionError(
                f"dimension mismatch: {dims.width}x{dims.height} vs {odims.width}x{odims.height}"
            )
    return dims


def const_image(dims: GridDims, value: bool) -> np.ndarray:
    return frozen(np.full(dims.shape, bool(value)))


def true_image(dims: GridDims) -> np.ndarray:
    return const_image(dims, True)


def false_image(dims: GridDims) -> np.ndarray:
    return const_image(dims, False)


def border(dims: GridDims) -> np.ndarray:
    out = np.zeros(dims.shape, dtype=bool)
    out[0, :] = True
    out[-1, :] = True
    out[:, 0] = True
    out[:, -1] = True
    return frozen(out)


def volume(b: np.ndarray) -> float:
    """Number of true voxels, as a float."""
    return float(np.count_nonzero(b))


def bool_and(*args: np.ndarray) -> np.ndarray:
    check_same_dims(*args)
    out = args[0].copy()
    for a in args[1:]:
        out &= a
    return frozen(out)


def bool_or(*args: np.ndarray) -> np.ndarray:
    check_same_dims(*args)
    out = args[0].copy()
    for a in args[1:]:
        out |= a
    return frozen(out)


def bool_not(a: np.ndarray) -> np.ndarray:
    return frozen(~a)


def bool_algebra(op: str, *args: np.ndarray) -> np.ndarray:
    if op == "and":
        return bool_and(*args)
    if op == "or":
        return bool_or(*args)
    if op == "not":
        if len(args) != 1:
            raise TypeError("not takes exactly one image")
        return bool_not(args[0])
    raise ValueError(f"unknown boolean operator {op!r}")
