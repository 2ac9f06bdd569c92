"""Brute-force reference implementations, independent of the package code."""

import math
from collections import deque

import numpy as np


def neighbours(y, x, h, w, adj):
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dy == 0 and dx == 0:
                continue
            if adj == 4 and dy != 0 and dx != 0:
                continue
            ny, nx = y + dy, x + dx
            if 0 <= ny < h and 0 <= nx < w:
                yield ny, nx


def reach_paths(target, through, adj):
    """x holds iff some path x = p0 .. pl ends in target with p1..p(l-1) in through."""
    h, w = target.shape
    out = np.zeros_like(target, dtype=bool)
    for y in range(h):
        for x in range(w):
            if target[y, x]:
                out[y, x] = True
                continue
            seen = {(y, x)}
            queue = deque([(y, x)])
            found = False
            while queue and not found:
                cy, cx = queue.popleft()
                for n in neighbours(cy, cx, h, w, adj):
                    if target[n]:
                        found = True
                        break
                    if through[n] and n not in seen:
                        seen.add(n)
                        queue.append(n)
            out[y, x] = found
    return out


def closure(b, adj):
    h, w = b.shape
    out = b.copy()
    for y in range(h):
        for x in range(w):
            if any(b[n] for n in neighbours(y, x, h, w, adj)):
                out[y, x] = True
    return out


def surrounded(f1, f2, adj):
    return f1 & ~reach_paths(~(f1 | f2), ~f2, adj)


def touch(f1, f2, adj):
    return f1 & reach_paths(f2, f1, adj)


def grow(f1, f2, adj):
    return f1 | touch(f2, f1, adj)


def manhattan_distance(b):
    h, w = b.shape
    pts = np.argwhere(b)
    out = np.full((h, w), np.inf)
    if len(pts) == 0:
        return out
    for y in range(h):
        for x in range(w):
            out[y, x] = np.min(np.abs(pts[:, 0] - y) + np.abs(pts[:, 1] - x))
    return out


def components(b, adj):
    """Labels by BFS in row-major first-encounter order."""
    h, w = b.shape
    labels = np.zeros((h, w), dtype=int)
    n = 0
    for y in range(h):
        for x in range(w):
            if b[y, x] and labels[y, x] == 0:
                n += 1
                labels[y, x] = n
                queue = deque([(y, x)])
                while queue:
                    c = queue.popleft()
                    for nb in neighbours(*c, h, w, adj):
                        if b[nb] and labels[nb] == 0:
                            labels[nb] = n
                            queue.append(nb)
    return labels, n


def window_histogram_pearson(a, region_values, y, x, hw, m, M, k):
    """Per-voxel histogram correlation computed from scratch in pure Python."""
    h, w = a.shape
    delta = (M - m) / k

    def hist(values):
        counts = [0] * k
        for v in values:
            if v == M:
                counts[k - 1] += 1
            elif m <= v < M:
                i = math.floor((v - m) / delta)
                counts[min(i, k - 1)] += 1
        return counts

    window = [a[yy, xx] for yy in range(max(0, y - hw), min(h, y + hw + 1))
              for xx in range(max(0, x - hw), min(w, x + hw + 1))]
    h1, h2 = hist(window), hist(region_values)
    c1, c2 = len(set(h1)) == 1, len(set(h2)) == 1
    if c1 and c2:
        return 1.0
    if c1 or c2:
        return 0.0
    m1, m2 = sum(h1) / k, sum(h2) / k
    num = sum((p - m1) * (q - m2) for p, q in zip(h1, h2))
    den = sum((p - m1) ** 2 for p in h1) ** 0.5 * sum((q - m2) ** 2 for q in h2) ** 0.5
    return num / den


def random_bool(rng, shape, p=None):
    p = rng.uniform(0.1, 0.9) if p is None else p
    return rng.random(shape) < p
