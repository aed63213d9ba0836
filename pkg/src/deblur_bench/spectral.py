"""Frequency-domain machinery: 2D DFT wrappers and PSF-to-OTF conversion.

Transforms delegate to numpy's mixed-radix FFT, which handles arbitrary
(not just power-of-two) dimensions. The convention is idft2(dft2(x)) == x,
with the 1/(H*W) normalization on the inverse.
"""
from __future__ import annotations

import numpy as np


def dft2(grid) -> np.ndarray:
    """Forward 2D DFT of a real or complex grid."""
    grid = np.asarray(grid)
    if grid.ndim != 2 or grid.size == 0:
        raise ValueError("dft2 expects a non-empty 2D grid")
    return np.fft.fft2(grid)


def idft2(grid) -> np.ndarray:
    """Inverse 2D DFT (complex output; take .real for real-valued data)."""
    grid = np.asarray(grid)
    if grid.ndim != 2 or grid.size == 0:
        raise ValueError("idft2 expects a non-empty 2D grid")
    return np.fft.ifft2(grid)


def psf_to_otf(kernel, shape) -> np.ndarray:
    """Transfer function of `kernel` for images of the given shape.

    The kernel is zero-padded to `shape` and circularly shifted so its
    center cell (rows//2, cols//2) lands at index (0, 0) before the forward
    transform. Circular spatial convolution with the kernel then equals
    pointwise multiplication by the returned array in the frequency domain.
    """
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2:
        raise ValueError("kernel must be 2D")
    height, width = shape
    krows, kcols = kernel.shape
    if krows > height or kcols > width:
        raise ValueError(f"kernel {kernel.shape} larger than target {tuple(shape)}")
    padded = np.zeros((height, width), dtype=np.float64)
    padded[:krows, :kcols] = kernel
    padded = np.roll(padded, (-(krows // 2), -(kcols // 2)), axis=(0, 1))
    return np.fft.fft2(padded)
