"""First-order texture similarity via histogram cross-correlation.

Two interchangeable paths compute the per-voxel map:

* ``cross_correlation_map_naive`` rebuilds the window histogram at every voxel;
* ``cross_correlation_map`` walks each horizontal band along a snake-shaped
  path and updates the histogram incrementally, removing the window face that
  leaves and adding the face that enters.

Windows are axis-aligned squares of half-width ``floor(r)``, clipped to the grid.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .grid import check_same_dims, frozen


@dataclass(frozen=True)
class Histogram:
    counts: np.ndarray
    m: float
    M: float

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def delta(self) -> float:
        return (self.M - self.m) / self.k


@dataclass(frozen=True)
class WindowSpec:
    radius: float
    shape: str = "square"

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError(f"window radius must be non-negative, got {self.radius}")
        if self.shape != "square":
            raise NotImplementedError(f"window shape {self.shape!r} is not implemented")

    @property
    def half_width(self) -> int:
        return int(math.floor(self.radius))


def _check_range(m: float, M: float, k: int) -> int:
    if not (math.isfinite(m) and math.isfinite(M)):
        raise ValueError(f"histogram range must be finite, got [{m}, {M}]")
    if not M > m:
        raise ValueError(f"histogram range needs M > m, got m={m}, M={M}")
    if k != int(k) or k < 1:
        raise ValueError(f"bin count must be a positive integer, got {k}")
    return int(k)


def bin_index(values: np.ndarray, m: float, M: float, k: int) -> np.ndarray:
    """Zero-based bin of each value, -1 for values outside [m, M].

    The top value ``M`` lands in the last bin instead of being dropped.
    """
    k = _check_range(m, M, k)
    delta = (M - m) / k
    v = np.asarray(values, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        idx = np.floor((v - m) / delta)
    idx = np.where(v == M, k - 1, idx)
    idx = np.where((v >= m) & (v <= M), np.clip(idx, 0, k - 1), -1)
    return idx.astype(np.int64)


def region_histogram(a: np.ndarray, mask: np.ndarray, m: float, M: float, k: int) -> Histogram:
    check_same_dims(a, mask)
    k = _check_range(m, M, k)
    idx = bin_index(a[mask], m, M, k)
    counts = np.bincount(idx[idx >= 0], minlength=k).astype(np.int64)
    return Histogram(counts, float(m), float(M))


def hist_mean(h: Histogram | np.ndarray) -> float:
    counts = h.counts if isinstance(h, Histogram) else np.asarray(h)
    return float(np.mean(counts)) if len(counts) else 0.0


def _is_constant(c: np.ndarray) -> bool:
    return bool(np.all(c == c[0]))


def _proportional(a: np.ndarray, b: np.ndarray) -> bool:
    # exact on integer counts; proportional histograms correlate at exactly 1
    ia, ib = a.astype(np.int64), b.astype(np.int64)
    return bool(np.all(ia * int(ib.sum()) == ib * int(ia.sum())))


def pearson(h1: Histogram | np.ndarray, h2: Histogram | np.ndarray) -> float:
    """Cross-correlation of two histograms with the constant-histogram rules.

    Both constant gives 1, exactly one constant gives 0.
    """
    a = np.asarray(h1.counts if isinstance(h1, Histogram) else h1, dtype=np.float64)
    b = np.asarray(h2.counts if isinstance(h2, Histogram) else h2, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"bin count mismatch: {a.size} vs {b.size}")
    ca, cb = _is_constant(a), _is_constant(b)
    if ca and cb:
        return 1.0
    if ca or cb:
        return 0.0
    if _proportional(a, b):
        return 1.0
    da = a - a.sum() / a.size
    db = b - b.sum() / b.size
    r = float(np.sum(da * db)) / (math.sqrt(float(np.sum(da * da))) * math.sqrt(float(np.sum(db * db))))
    return min(1.0, max(-1.0, r))


def _prepare(w: WindowSpec, a, b, region, m, M, k):
    check_same_dims(a, b, region)
    k = _check_range(m, M, k)
    return k, region_histogram(b, region, m, M, k)


def cross_correlation_map_naive(
    w: WindowSpec, a: np.ndarray, b: np.ndarray, region: np.ndarray, m: float, M: float, k: int
) -> np.ndarray:
    """Reference path: one fresh histogram per voxel."""
    k, href = _prepare(w, a, b, region, m, M, k)
    hw = w.half_width
    height, width = a.shape
    out = np.empty(a.shape, dtype=np.float64)
    full = np.ones(a.shape, dtype=bool)
    for y in range(height):
        y0, y1 = max(0, y - hw), min(height, y + hw + 1)
        for x in range(width):
            x0, x1 = max(0, x - hw), min(width, x + hw + 1)
            hx = region_histogram(a[y0:y1, x0:x1], full[y0:y1, x0:x1], m, M, k)
            out[y, x] = pearson(hx, href)
    return frozen(out)


@numba.njit(cache=True, nogil=True)
def _pearson_counts(h, ref, ref_total, db, syy, ref_const):
    k = h.shape[0]
    const = True
    total = 0
    for i in range(k):
        total += h[i]
        if h[i] != h[0]:
            const = False
    if const and ref_const:
        return 1.0
    if const or ref_const:
        return 0.0
    proportional = True
    for i in range(k):
        if h[i] * ref_total != ref[i] * total:
            proportional = False
            break
    if proportional:
        return 1.0
    mean = total / k
    sxy = 0.0
    sxx = 0.0
    for i in range(k):
        d = h[i] - mean
        sxy += d * db[i]
        sxx += d * d
    r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    if r > 1.0:
        return 1.0
    if r < -1.0:
        return -1.0
    return r


@numba.njit(cache=True, nogil=True)
def _sliding_band(bins, hw, k, ref, ref_total, db, syy, ref_const, y_start, y_stop, out):
    height, width = bins.shape
    h = np.zeros(k, dtype=np.int64)
    # seed the full window at (y_start, 0)
    for yy in range(max(0, y_start - hw), min(height, y_start + hw + 1)):
        for xx in range(0, min(width, hw + 1)):
            v = bins[yy, xx]
            if v >= 0:
                h[v] += 1
    x = 0
    step = 1
    y = y_start
    while True:
        out[y, x] = _pearson_counts(h, ref, ref_total, db, syy, ref_const)
        nx = x + step
        if 0 <= nx < width:
            # horizontal move: swap one column face
            leave = x - step * hw
            enter = nx + step * hw
            ylo = max(0, y - hw)
            yhi = min(height, y + hw + 1)
            if 0 <= leave < width:
                for yy in range(ylo, yhi):
                    v = bins[yy, leave]
                    if v >= 0:
                        h[v] -= 1
            if 0 <= enter < width:
                for yy in range(ylo, yhi):
                    v = bins[yy, enter]
                    if v >= 0:
                        h[v] += 1
            x = nx
            continue
        ny = y + 1
        if ny >= y_stop:
            break
        # vertical move at the end of a row: swap one row face
        xlo = max(0, x - hw)
        xhi = min(width, x + hw + 1)
        leave = y - hw
        enter = ny + hw
        if leave >= 0:
            for xx in range(xlo, xhi):
                v = bins[leave, xx]
                if v >= 0:
                    h[v] -= 1
        if enter < height:
            for xx in range(xlo, xhi):
                v = bins[enter, xx]
                if v >= 0:
                    h[v] += 1
        y = ny
        step = -step


def cross_correlation_map(
    w: WindowSpec,
    a: np.ndarray,
    b: np.ndarray,
    region: np.ndarray,
    m: float,
    M: float,
    k: int,
    bands: int = 1,
) -> np.ndarray:
    """Per-voxel correlation between the local histogram of ``a`` and the
    histogram of ``b`` over ``region``, using incremental window updates.

    ``bands`` horizontal strips are processed independently (possibly in
    parallel); the result does not depend on it.
    """
    k, href = _prepare(w, a, b, region, m, M, k)
    bins = bin_index(a, m, M, k)
    ref_counts = href.counts.astype(np.int64)
    ref_total = int(ref_counts.sum())
    ref = ref_counts.astype(np.float64)
    db = ref - ref.sum() / k
    syy = float(np.sum(db * db))
    ref_const = _is_constant(ref)
    height = a.shape[0]
    out = np.empty(a.shape, dtype=np.float64)
    bands = max(1, min(int(bands), height))
    edges = np.linspace(0, height, bands + 1).astype(int)
    jobs = [(int(edges[i]), int(edges[i + 1])) for i in range(bands) if edges[i] < edges[i + 1]]

    def run(span):
        _sliding_band(bins, w.half_width, k, ref_counts, ref_total, db, syy, ref_const, span[0], span[1], out)

    if len(jobs) == 1:
        run(jobs[0])
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            list(pool.map(run, jobs))
    return frozen(out)
