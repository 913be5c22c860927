"""Fixed drawing palette: the eight RGB-cube corners, four shapes, two sizes.

Pixel floats everywhere in the package are ``uint8 / 256`` so that the
affine [0,1] <-> [-1,1] latent map round-trips bit-exactly in fp32.
"""

from __future__ import annotations

import numpy as np

PALETTE: dict[str, tuple[int, int, int]] = {
    "black": (0, 0, 0),
    "white": (255, 255, 255),
    "red": (255, 0, 0),
    "green": (0, 255, 0),
    "blue": (0, 0, 255),
    "yellow": (255, 255, 0),
    "cyan": (0, 255, 255),
    "purple": (255, 0, 255),
}

COLORS: tuple[str, ...] = tuple(PALETTE)

SHAPES: tuple[str, ...] = ("circle", "square", "triangle", "star")

SIZES: dict[str, int] = {"small": 6, "large": 11}  # radius in pixels


def palette_float() -> np.ndarray:
    """(8, 3) float32 palette on the k/256 grid, index-aligned with COLORS."""
    arr = np.array([PALETTE[c] for c in COLORS], dtype=np.float32)
    return arr / 256.0


def to_float(img_u8: np.ndarray) -> np.ndarray:
    return img_u8.astype(np.float32) / 256.0


def to_u8(img_f32: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(img_f32 * 256.0), 0, 255).astype(np.uint8)
