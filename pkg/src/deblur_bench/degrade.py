"""Degradation model: convolution blur plus salt-and-pepper noise.

The observed image is the original convolved with a PSF, with a fraction of
pixels then replaced by extreme values. Noise injection is driven by a
self-contained SplitMix64 generator so that results are bit-identical for a
given seed on every platform.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_image

BOUNDARY_MODES = {
    "circular": "wrap",
    "replicate": "edge",
    "symmetric": "symmetric",
    "zero": "constant",
}

_MASK64 = 0xFFFFFFFFFFFFFFFF


class SplitMix64:
    """SplitMix64 pseudo-random generator (Steele, Lea & Flood 2014).

    next_u64:
        state = (state + 0x9E3779B97F4A7C15) mod 2^64
        z = state
        z = ((z xor (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
        z = ((z xor (z >> 27)) * 0x94D049BB133111EB) mod 2^64
        return z xor (z >> 31)

    next_float maps the top 53 bits to a double in [0, 1).
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53


@dataclass(frozen=True)
class NoiseSpec:
    """Salt-and-pepper noise parameters: corruption density, seed, values."""

    density: float
    seed: int
    salt_value: float = 255.0
    pepper_value: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"noise density must be in [0, 1], got {self.density}")
        if self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed}")


def convolve(img, kernel, mode: str = "circular") -> np.ndarray:
    """2D convolution with the given boundary extension; output size = input size.

    The kernel center is (rows//2, cols//2), matching the PSF-to-OTF
    convention, so circular convolution here equals pointwise OTF
    multiplication in the frequency domain.
    """
    img = as_image(img)
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2:
        raise ValueError("kernel must be 2D")
    if not np.all(np.isfinite(kernel)):
        raise ValueError("kernel contains NaN or infinite weights")
    if mode not in BOUNDARY_MODES:
        raise ValueError(f"unknown boundary mode {mode!r}, expected one of {sorted(BOUNDARY_MODES)}")
    height, width = img.shape
    krows, kcols = kernel.shape
    if krows > height or kcols > width:
        raise ValueError(f"kernel {kernel.shape} larger than image {img.shape}")

    cr, cc = krows // 2, kcols // 2
    padded = np.pad(img, ((krows - 1 - cr, cr), (kcols - 1 - cc, cc)),
                    mode=BOUNDARY_MODES[mode])
    out = np.zeros_like(img)
    for a in range(krows):
        for b in range(kcols):
            w = kernel[a, b]
            if w != 0.0:
                out += w * padded[krows - 1 - a:krows - 1 - a + height,
                                  kcols - 1 - b:kcols - 1 - b + width]
    return out


def add_salt_pepper(img, spec: NoiseSpec) -> np.ndarray:
    """Replace pixels with salt/pepper values at the given density.

    Pixels are visited in row-major order. Each pixel consumes one uniform
    draw for the corruption decision; a corrupted pixel consumes one more
    draw, becoming salt when it is below 0.5 and pepper otherwise. This
    draw ordering is part of the bit-exact determinism contract.
    """
    img = as_image(img)
    out = img.copy()
    flat = out.ravel()
    rng = SplitMix64(spec.seed)
    density = spec.density
    salt, pepper = spec.salt_value, spec.pepper_value
    for idx in range(flat.size):
        if rng.next_float() < density:
            flat[idx] = salt if rng.next_float() < 0.5 else pepper
    return out


def degrade(img, kernel, mode: str, spec: NoiseSpec) -> np.ndarray:
    """Blur then corrupt: add_salt_pepper(convolve(img, kernel, mode), spec)."""
    return add_salt_pepper(convolve(img, kernel, mode), spec)
