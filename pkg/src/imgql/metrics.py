"""Segmentation similarity indexes and the Polsby-Popper compactness measure.

``pred`` is the computed segmentation and ``truth`` the reference mask.
Vacuous ratios (0/0) count as perfect agreement, except ``ppm`` which
returns 0 for a shape without internal boundary.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .grid import DEFAULT_ADJACENCY, check_same_dims, volume
from .spatial import Adj, closure, interior

PI_APPROX = 3.14


@dataclass(frozen=True)
class Confusion:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class MetricsRecord:
    tp: int
    tn: int
    fp: int
    fn: int
    dice: float
    jaccard: float
    sensitivity: float
    specificity: float
    accuracy: float

    def as_dict(self) -> dict:
        return asdict(self)


def _ratio(num: float, den: float) -> float:
    return 1.0 if den == 0 else num / den


def confusion(pred: np.ndarray, truth: np.ndarray) -> Confusion:
    check_same_dims(pred, truth)
    tp = int(np.count_nonzero(pred & truth))
    fp = int(np.count_nonzero(pred & ~truth))
    fn = int(np.count_nonzero(~pred & truth))
    return Confusion(tp, pred.size - tp - fp - fn, fp, fn)


def dice(x: np.ndarray, y: np.ndarray) -> float:
    c = confusion(x, y)
    return _ratio(2.0 * c.tp, 2.0 * c.tp + c.fp + c.fn)


def jaccard(x: np.ndarray, y: np.ndarray) -> float:
    d = dice(x, y)
    return d / (2.0 - d)


def sensitivity(x: np.ndarray, y: np.ndarray) -> float:
    c = confusion(x, y)
    return _ratio(float(c.tp), float(c.tp + c.fn))


def specificity(x: np.ndarray, y: np.ndarray) -> float:
    c = confusion(x, y)
    return _ratio(float(c.tn), float(c.tn + c.fp))


def accuracy(x: np.ndarray, y: np.ndarray) -> float:
    c = confusion(x, y)
    return _ratio(float(c.tp + c.tn), float(c.total))


def metrics_record(pred: np.ndarray, truth: np.ndarray) -> MetricsRecord:
    c = confusion(pred, truth)
    d = _ratio(2.0 * c.tp, 2.0 * c.tp + c.fp + c.fn)
    return MetricsRecord(
        tp=c.tp,
        tn=c.tn,
        fp=c.fp,
        fn=c.fn,
        dice=d,
        jaccard=d / (2.0 - d),
        sensitivity=_ratio(float(c.tp), float(c.tp + c.fn)),
        specificity=_ratio(float(c.tn), float(c.tn + c.fp)),
        accuracy=_ratio(float(c.tp + c.tn), float(c.total)),
    )


def iboundary(x: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> np.ndarray:
    """Inner boundary: voxels near the interior of x but not in it."""
    inner = interior(x, adj)
    return closure(inner, adj) & ~inner


def ppm(x: np.ndarray, adj: Adj = DEFAULT_ADJACENCY) -> float:
    perimeter = volume(iboundary(x, adj))
    if perimeter == 0:
        return 0.0
    return (volume(x) * 4 * PI_APPROX) / (perimeter * perimeter)
