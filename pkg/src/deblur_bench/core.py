"""Image representation, statistics, and grayscale file I/O.

Images are 2D float64 numpy arrays of gray levels on a nominal 0-255 scale.
Intermediate processing may leave that range; quantization back to 8 bits
happens only at save time (or via an explicit `quantize` call).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


def as_image(data) -> np.ndarray:
    """Coerce array-like pixel data to a validated 2D float64 image."""
    img = np.asarray(data, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError(f"image must be 2D, got {img.ndim} dimension(s)")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"image must be at least 1x1, got {img.shape}")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains NaN or infinite pixel values")
    return np.ascontiguousarray(img)


@dataclass(frozen=True)
class StatsRow:
    """Per-image statistics: mean, standard deviation, snr = mean/std.

    `rmse` is filled only when a reference image was supplied. `snr` is
    math.inf when the image is constant (std == 0).
    """

    mean: float
    std: float
    snr: float
    rmse: float | None = None


def mean(img) -> float:
    """Arithmetic mean over all pixels."""
    return float(np.mean(as_image(img)))


def stddev(img) -> float:
    """Sample standard deviation (N-1 normalization)."""
    img = as_image(img)
    if img.size < 2:
        raise ValueError("standard deviation needs at least 2 pixels")
    return float(np.std(img, ddof=1))


def snr(img) -> float:
    """Mean-to-standard-deviation ratio."""
    sigma = stddev(img)
    if sigma == 0.0:
        raise ValueError("snr undefined for a constant image (std == 0)")
    return mean(img) / sigma


def rmse(a, b) -> float:
    """Root mean squared pixel difference between two same-shape images."""
    a = as_image(a)
    b = as_image(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    return float(math.sqrt(np.mean(diff * diff)))


def image_stats(img, reference=None) -> StatsRow:
    """Build a StatsRow for `img`, with rmse against `reference` if given."""
    img = as_image(img)
    mu = mean(img)
    sigma = stddev(img)
    ratio = mu / sigma if sigma > 0.0 else math.inf
    err = None if reference is None else rmse(img, reference)
    return StatsRow(mean=mu, std=sigma, snr=ratio, rmse=err)


def quantize(img) -> np.ndarray:
    """Clamp to [0, 255] and round half away from zero to integral values.

    This is exactly the mapping applied when saving to an 8-bit file, so
    `quantize(x)` equals a save/load round trip of `x`.
    """
    clamped = np.clip(as_image(img), 0.0, 255.0)
    # values are non-negative here, so floor(x + 0.5) rounds half away from zero
    return np.floor(clamped + 0.5)


# ---------------------------------------------------------------------------
# File I/O: binary PGM (P5, maxval 255) is the primary format; 8-bit
# grayscale PNG is a convenience codec via Pillow.
# ---------------------------------------------------------------------------

def _next_pgm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Return the next whitespace-delimited header token, skipping comments."""
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise ValueError("truncated PGM header")
    return data[start:pos], pos


def _load_pgm(path: Path) -> np.ndarray:
    data = path.read_bytes()
    magic = data[:2]
    if magic == b"P6":
        raise ValueError(f"{path}: P6 is color PPM, not grayscale PGM")
    if magic == b"P2":
        raise ValueError(f"{path}: ASCII PGM (P2) is not supported, use binary P5")
    if magic != b"P5":
        raise ValueError(f"{path}: not a binary PGM file (missing P5 magic)")
    try:
        pos = 2
        width_tok, pos = _next_pgm_token(data, pos)
        height_tok, pos = _next_pgm_token(data, pos)
        maxval_tok, pos = _next_pgm_token(data, pos)
        width, height, maxval = int(width_tok), int(height_tok), int(maxval_tok)
    except ValueError as exc:
        raise ValueError(f"{path}: malformed PGM header ({exc})") from None
    if width < 1 or height < 1:
        raise ValueError(f"{path}: invalid PGM dimensions {width}x{height}")
    if maxval != 255:
        raise ValueError(f"{path}: maxval {maxval} not supported (8-bit only)")
    pos += 1  # single whitespace byte separates header from raster
    raster = data[pos:]
    expected = width * height
    if len(raster) != expected:
        raise ValueError(
            f"{path}: PGM payload has {len(raster)} bytes, expected {expected}"
        )
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return pixels.astype(np.float64)


def _save_pgm(img: np.ndarray, path: Path) -> None:
    height, width = img.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    payload = quantize(img).astype(np.uint8).tobytes()
    path.write_bytes(header + payload)


def _load_png(path: Path) -> np.ndarray:
    from PIL import Image as PILImage

    with PILImage.open(path) as im:
        if im.mode != "L":
            raise ValueError(
                f"{path}: PNG mode {im.mode!r} is not 8-bit grayscale ('L')"
            )
        return np.asarray(im, dtype=np.float64)


def _save_png(img: np.ndarray, path: Path) -> None:
    from PIL import Image as PILImage

    PILImage.fromarray(quantize(img).astype(np.uint8), mode="L").save(path)


def load_image(path) -> np.ndarray:
    """Load an 8-bit grayscale image (PGM or PNG) as a float64 array."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".pgm":
        return _load_pgm(path)
    if suffix == ".png":
        return _load_png(path)
    raise ValueError(f"{path}: unsupported image format {suffix!r} (use .pgm or .png)")


def save_image(img, path) -> None:
    """Save an image as 8-bit grayscale, clamping and rounding pixel values."""
    img = as_image(img)
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".pgm":
        _save_pgm(img, path)
    elif suffix == ".png":
        _save_png(img, path)
    else:
        raise ValueError(f"{path}: unsupported image format {suffix!r} (use .pgm or .png)")
