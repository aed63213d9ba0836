"""Adaptive median filtering for salt-and-pepper noise removal."""
from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import as_image


def adaptive_median(img, max_window: int = 5) -> np.ndarray:
    """Two-stage adaptive median filter with window growth 3x3 up to max_window.

    For each pixel, starting from a 3x3 window:

    * Stage A: if the window median lies strictly between the window min and
      max, proceed to Stage B; otherwise grow the window by 2 per side and
      retry. If the window reaches max_window without passing, output the
      median of that largest window.
    * Stage B: output the center pixel if it lies strictly between the
      window min and max, otherwise output the window median.

    Windows are filled via replicate extension at the image borders, so every
    sample has a full (odd) count and the median is an exact order statistic.
    The per-pixel decisions read only the input image, never partial output.
    """
    img = as_image(img)
    if max_window < 3 or max_window % 2 == 0:
        raise ValueError(f"max_window must be an odd integer >= 3, got {max_window}")
    height, width = img.shape
    if max_window > min(height, width):
        raise ValueError(f"max_window {max_window} exceeds image extent {img.shape}")

    pad = max_window // 2
    padded = np.pad(img, pad, mode="edge")
    out = img.copy()
    undecided = np.ones(img.shape, dtype=bool)

    for window in range(3, max_window + 1, 2):
        radius = window // 2
        offset = pad - radius
        views = sliding_window_view(padded, (window, window))
        flat = views[offset:offset + height, offset:offset + width].reshape(
            height, width, window * window)
        med = np.median(flat, axis=2)
        low = flat.min(axis=2)
        high = flat.max(axis=2)

        passes_stage_a = (low < med) & (med < high)
        decide = undecided & passes_stage_a
        keep_center = (low < img) & (img < high)
        out = np.where(decide, np.where(keep_center, img, med), out)
        undecided &= ~decide

        if window == max_window:
            out = np.where(undecided, med, out)
    return out
