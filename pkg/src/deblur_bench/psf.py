"""Point spread function constructors and the Laplacian smoothness operator.

Blur PSFs are small non-negative kernels normalized to unit sum. Angles are
in degrees, counter-clockwise from the horizontal axis.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np


def motion_psf(length_px: float, angle_deg: float) -> np.ndarray:
    """Uniform linear motion blur kernel.

    The kernel covers a line segment of length `length_px` centered in the
    grid at `angle_deg`. With h = (length_px - 1)/2 the grid spans
    2*ceil(h*|sin|)+1 rows by 2*ceil(h*|cos|)+1 columns. Each cell is
    weighted by max(0, 1/2 - distance from cell center to the segment),
    i.e. an anti-aliased line, then the whole grid is normalized to unit
    sum. The result is exactly invariant under 180 degree rotation.
    """
    if not math.isfinite(length_px) or length_px < 1.0:
        raise ValueError(f"motion length must be >= 1 pixel, got {length_px}")
    if not math.isfinite(angle_deg):
        raise ValueError("motion angle must be finite")

    # Reduce to [0, 90]: +180 deg is the same kernel, and (90, 180) mirrors
    # the (0, 90) kernel left-right. Doing the reduction before any trig
    # keeps those identities exact in floating point.
    angle = math.fmod(angle_deg, 180.0)
    if angle < 0.0:
        angle += 180.0
    mirrored = angle > 90.0
    if mirrored:
        angle = 180.0 - angle
    if angle == 0.0:
        ux, uy = 1.0, 0.0
    elif angle == 90.0:
        ux, uy = 0.0, 1.0
    else:
        theta = math.radians(angle)
        ux, uy = math.cos(theta), math.sin(theta)

    half = (length_px - 1.0) / 2.0
    rows = 2 * math.ceil(half * uy) + 1
    cols = 2 * math.ceil(half * ux) + 1

    # Cell offsets from the kernel center; dy points up so that positive
    # angles run counter-clockwise in image coordinates.
    dx = np.arange(cols, dtype=np.float64) - (cols - 1) / 2.0
    dy = (rows - 1) / 2.0 - np.arange(rows, dtype=np.float64)
    dxg, dyg = np.meshgrid(dx, dy)

    t = np.clip(dxg * ux + dyg * uy, -half, half)
    dist = np.hypot(dxg - t * ux, dyg - t * uy)
    weights = np.maximum(0.0, 0.5 - dist)
    # normalize before mirroring: summation order must not depend on the
    # mirror, or the reflection identities hold only to rounding error
    weights = weights / weights.sum()
    if mirrored:
        weights = weights[:, ::-1]
    return np.ascontiguousarray(weights)


def gaussian_psf(size: int, sigma: float) -> np.ndarray:
    """Normalized square Gaussian low-pass kernel of odd `size`."""
    if size < 1 or size % 2 == 0:
        raise ValueError(f"gaussian size must be a positive odd integer, got {size}")
    if not (sigma > 0.0) or not math.isfinite(sigma):
        raise ValueError(f"gaussian sigma must be positive, got {sigma}")
    offsets = np.arange(size, dtype=np.float64) - size // 2
    dist_sq = offsets[:, None] ** 2 + offsets[None, :] ** 2
    weights = np.exp(-dist_sq / (2.0 * sigma * sigma))
    return weights / weights.sum()


def laplacian_operator(rows: int, cols: int) -> np.ndarray:
    """Finite-difference Laplacian stencil zero-embedded in a rows x cols grid.

    The canonical 3x3 stencil [0 1 0; 1 -4 1; 0 1 0] sits at the grid
    center; the surrounding entries are zero, so the operator's spectral
    response is independent of the requested extent. Entries sum to 0.
    """
    if rows < 3 or cols < 3:
        raise ValueError(f"operator dimensions must be at least 3x3, got {rows}x{cols}")
    grid = np.zeros((rows, cols), dtype=np.float64)
    r, c = rows // 2, cols // 2
    grid[r - 1:r + 2, c - 1:c + 2] = [[0, 1, 0], [1, -4, 1], [0, 1, 0]]
    return grid


# ---------------------------------------------------------------------------
# Plain-text kernel serialization: first line "rows cols", then one line of
# decimal weights per row. Used by the CLI and golden tests.
# ---------------------------------------------------------------------------

def kernel_to_text(kernel) -> str:
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2:
        raise ValueError("kernel must be 2D")
    lines = [f"{kernel.shape[0]} {kernel.shape[1]}"]
    for row in kernel:
        lines.append(" ".join(f"{w:.17g}" for w in row))
    return "\n".join(lines) + "\n"


def kernel_from_text(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty kernel text")
    try:
        rows, cols = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise ValueError(f"bad kernel header line {lines[0]!r}") from None
    if rows < 1 or cols < 1 or len(lines) != rows + 1:
        raise ValueError(f"kernel text claims {rows} rows but has {len(lines) - 1}")
    kernel = np.empty((rows, cols), dtype=np.float64)
    for i, line in enumerate(lines[1:]):
        values = line.split()
        if len(values) != cols:
            raise ValueError(f"kernel row {i} has {len(values)} values, expected {cols}")
        kernel[i] = [float(v) for v in values]
    return kernel


def save_kernel(kernel, path) -> None:
    Path(path).write_text(kernel_to_text(kernel), encoding="ascii")


def load_kernel(path) -> np.ndarray:
    return kernel_from_text(Path(path).read_text(encoding="ascii"))
