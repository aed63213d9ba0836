"""Procedurally generated stand-in test image.

A 183x275 grayscale flower-like pattern: a bright five-lobed rosette with a
dark core on a gently waving background. The background is periodic in both
axes so that circular blurring introduces no wrap seams, flat regions
quantize to wide plateaus, and the rosette boundary is a hard edge, making
deconvolution artifacts (ringing, checkerboarding) clearly observable. The
generator is pure arithmetic: the same pixels on every platform.
"""
from __future__ import annotations

from importlib import resources

import numpy as np

from .core import load_image, quantize

HEIGHT = 183
WIDTH = 275

_PETALS = 5
_BASE_RADIUS = 58.0
_LOBE_DEPTH = 22.0
_CORE_RADIUS = 20.0
_PETAL_VALUE = 192.0
_CORE_VALUE = 36.0


def standin_image(height: int = HEIGHT, width: int = WIDTH) -> np.ndarray:
    """Generate the stand-in image as integral-valued float64 gray levels."""
    rows = np.arange(height, dtype=np.float64)[:, None]
    cols = np.arange(width, dtype=np.float64)[None, :]

    # periodic in both axes (circular blur sees no seam) with cosine phase,
    # so the background gradient vanishes at every border
    background = (55.0 + 13.0 * np.cos(2.0 * np.pi * cols / width)
                  + 7.0 * np.cos(2.0 * np.pi * rows / height))

    cy, cx = (height - 1) / 2.0, (width - 1) / 2.0
    dy = rows - cy
    dx = cols - cx
    radius = np.hypot(dx, dy)
    angle = np.arctan2(dy, dx)
    lobe_radius = _BASE_RADIUS + _LOBE_DEPTH * np.cos(_PETALS * angle)

    img = background
    img = np.where(radius < lobe_radius, _PETAL_VALUE, img)
    img = np.where(radius < _CORE_RADIUS, _CORE_VALUE, img)
    return quantize(img)


def smooth_image(height: int = HEIGHT, width: int = WIDTH) -> np.ndarray:
    """Generate a smooth, impulse-free test image (a column-wise cosine).

    Gray levels depend on the column only, so level sets are straight
    vertical lines and stay that way under any circular blur. On such data
    the adaptive median filter is an exact no-op, which makes this the
    reference input for pipeline-identity checks at zero noise density.
    """
    cols = np.arange(width, dtype=np.float64)[None, :]
    field = 128.0 + 90.0 * np.cos(2.0 * np.pi * cols / width)
    return quantize(np.broadcast_to(field, (height, width)))


def standin_path() -> str:
    """Filesystem path of the committed stand-in PGM asset."""
    return str(resources.files("deblur_bench").joinpath("data/standin.pgm"))


def load_standin() -> np.ndarray:
    """Load the committed stand-in image."""
    return load_image(standin_path())
