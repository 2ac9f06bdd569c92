"""Synthetic dermoscopy-like cases for smoke tests and benchmarks.

A case is a light, noisy skin background with a dark compact lesion, dark
vignetting corners and optionally a saturated blue marker patch on the right
edge. The exact masks of each ingredient are returned alongside the image.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image


@dataclass
class SyntheticCase:
    rgb: np.ndarray  # (H, W, 3) uint8
    lesion: np.ndarray  # ground truth
    corners: np.ndarray
    patch: np.ndarray


def make_case(
    width: int = 512,
    height: int = 384,
    seed: int = 0,
    lesion_radius: float | None = None,
    corner_radius: float | None = None,
    patch_radius: float | None = None,
) -> SyntheticCase:
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width]
    scale = min(width, height)
    lesion_radius = 0.22 * scale if lesion_radius is None else lesion_radius
    corner_radius = 0.18 * scale if corner_radius is None else corner_radius
    patch_radius = 0.1 * scale if patch_radius is None else patch_radius

    skin = np.stack(
        [
            rng.normal(215, 6, (height, width)),
            rng.normal(180, 6, (height, width)),
            rng.normal(160, 6, (height, width)),
        ],
        axis=-1,
    )

    cx, cy = width * 0.45, height * 0.5
    lesion = (xx - cx) ** 2 + (yy - cy) ** 2 <= lesion_radius**2
    dark = np.stack(
        [
            rng.normal(110, 7, (height, width)),
            rng.normal(75, 7, (height, width)),
            rng.normal(60, 7, (height, width)),
        ],
        axis=-1,
    )
    img = np.where(lesion[..., None], dark, skin)

    corners = np.zeros((height, width), dtype=bool)
    for ox, oy in [(0, 0), (width - 1, 0), (0, height - 1), (width - 1, height - 1)]:
        corners |= (xx - ox) ** 2 + (yy - oy) ** 2 <= corner_radius**2
    img[corners] = rng.normal(8, 3, (int(corners.sum()), 3))

    patch = np.zeros((height, width), dtype=bool)
    if patch_radius > 0:
        patch = (xx - (width - 1)) ** 2 + (yy - height * 0.5) ** 2 <= patch_radius**2
        img[patch] = (40, 60, 230)

    rgb = np.clip(np.rint(img), 0, 255).astype(np.uint8)
    return SyntheticCase(rgb, lesion, corners, patch)


def write_case(directory: str | Path, name: str, case: SyntheticCase) -> tuple[Path, Path]:
    """Write ``<name>.png`` and ``<name>_seg_RGB.png`` into ``directory``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    image_path = d / f"{name}.png"
    truth_path = d / f"{name}_seg_RGB.png"
    Image.fromarray(case.rgb, mode="RGB").save(image_path)
    truth = np.where(case.lesion, 255, 0).astype(np.uint8)
    Image.fromarray(np.stack([truth] * 3, axis=-1), mode="RGB").save(truth_path)
    return image_path, truth_path
