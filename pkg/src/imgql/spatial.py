"""Spatial operators over boolean images.

Reachability is never computed by enumerating paths: ``may_reach`` uses the
closure of the target plus the connected components of the "through" set that
touch it. ``tests/oracles.py`` keeps a brute-force path search to check this.
"""

from __future__ import annotations

import operator
from typing import Callable, NamedTuple

import numpy as np
from scipy import ndimage

from .grid import (
    DEFAULT_ADJACENCY,
    Adjacency,
    check_same_dims,
    frozen,
)

Adj = Adjacency | int | str


def _adj(adj: Adj) -> Adjacency:
    return Adjacency.parse(adj)


def _slices(d: int) -> tuple[slice, slice]:
    # (destination, source) slices along one axis for a shift by d
    if d > 0:
        return slice(d, None), slice(None, -d)
    if d < 0:
        return slice(None, d), slice(-d, None)
    return slice(None), slice(None)


def closure(b: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    """Voxels that are in ``b`` or adjacent to a voxel of ``b``."""
    out = b.copy()
    for dy, dx in _adj(adj).offsets():
        ydst, ysrc = _slices(dy)
        xdst, xsrc = _slices(dx)
        out[ydst, xdst] |= b[ysrc, xsrc]
    return frozen(out)


near = closure


def interior(b: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    return frozen(~closure(~b, adj))


class LabelImage(NamedTuple):
    labels: np.ndarray  # int32, 0 = background
    count: int


def connected_components(b: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> LabelImage:
    """Label components 1..K in order of first encounter in a row-major scan."""
    labels, count = ndimage.label(b, structure=_adj(adj).structure())
    return LabelImage(frozen(labels), int(count))


def may_reach(target: np.ndarray, through: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    """Voxels with a path ending in ``target`` whose inner steps stay in ``through``."""
    check_same_dims(target, through)
    adj = _adj(adj)
    near_target = closure(target, adj)
    labels, count = connected_components(through, adj)
    if count == 0:
        return near_target
    hit = np.unique(labels[near_target & through])
    hit = hit[hit != 0]
    if hit.size == 0:
        return near_target
    keep = np.zeros(count + 1, dtype=bool)
    keep[hit] = True
    zone = keep[labels]
    return frozen(near_target | closure(zone, adj))


def may_reach_fwd(target: np.ndarray, through: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    return may_reach(target, through, adj)


def may_reach_bwd(source: np.ndarray, through: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    # adjacency is symmetric, so reversing the path changes nothing
    return may_reach(source, through, adj)


def surrounded(f1: np.ndarray, f2: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    check_same_dims(f1, f2)
    escape = may_reach(~(f1 | f2), ~f2, adj)
    return frozen(f1 & ~escape)


def touch(f1: np.ndarray, f2: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    check_same_dims(f1, f2)
    return frozen(f1 & may_reach(f2, f1, adj))


def grow(f1: np.ndarray, f2: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    check_same_dims(f1, f2)
    return frozen(f1 | touch(f2, f1, adj))


def _l1_scan(d: np.ndarray, axis: int) -> None:
    # forward and backward pass along one axis, in place; exact for unit steps
    n = d.shape[axis]
    view = d if axis == 0 else d.T
    for i in range(1, n):
        np.minimum(view[i], view[i - 1] + 1.0, out=view[i])
    for i in range(n - 2, -1, -1):
        np.minimum(view[i], view[i + 1] + 1.0, out=view[i])


def distance_transform(b: np.ndarray) -> np.ndarray:
    """City-block distance of every voxel to the nearest true voxel.

    Computed as two chamfer passes per axis; the L1 metric is separable so the
    result is exact. All-false input gives ``+inf`` everywhere.
    """
    d = np.where(b, 0.0, np.inf)
    _l1_scan(d, axis=1)
    _l1_scan(d, axis=0)
    return frozen(d)


COMPARATORS: dict[str, Callable] = {
    "<": operator.lt,
    "<=": operator.le,
    ">=": operator.ge,
    ">": operator.gt,
}


class DistInterval(NamedTuple):
    comparator: str
    bound: float


def dist_predicate(b: np.ndarray, iv: DistInterval | tuple[str, float]) -> np.ndarray:
    comparator, bound = iv
    if comparator not in COMPARATORS:
        raise ValueError(f"unknown distance comparator {comparator!r}")
    if not bound >= 0:
        raise ValueError(f"distance bound must be non-negative, got {bound}")
    return frozen(COMPARATORS[comparator](distance_transform(b), float(bound)))


def distleq(r: float, b: np.ndarray) -> np.ndarray:
    return dist_predicate(b, ("<=", r))


def distlt(r: float, b: np.ndarray) -> np.ndarray:
    return dist_predicate(b, ("<", r))


def distgeq(r: float, b: np.ndarray) -> np.ndarray:
    return dist_predicate(b, (">=", r))


def distgt(r: float, b: np.ndarray) -> np.ndarray:
    return dist_predicate(b, (">", r))


def smoothen(r: float, b: np.ndarray) -> np.ndarray:
    """Opening-like filter: keeps regions of b that fit a radius-r ball.

    With ``r == 0`` the result is all-false (``d < 0`` never holds).
    """
    if r < 0:
        raise ValueError(f"smoothen radius must be non-negative, got {r}")
    return distlt(r, distgeq(r, ~b))


def maxvol(b: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    """Union of the largest connected components; ties are all kept."""
    labels, count = connected_components(b, adj)
    if count == 0:
        return frozen(np.zeros_like(b, dtype=bool))
    sizes = np.bincount(labels.ravel(), minlength=count + 1)
    sizes[0] = 0
    keep = sizes == sizes.max()
    return frozen(keep[labels])
