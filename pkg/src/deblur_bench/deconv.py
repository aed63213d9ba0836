"""Non-blind deblurring: Wiener, Richardson-Lucy, and regularized least squares.

All three methods assume the circular-convolution forward model. Images
blurred with a different boundary extension will show artifacts near the
borders; that is expected and documented.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import as_image
from .degrade import convolve
from .psf import laplacian_operator
from .spectral import psf_to_otf

# Frequencies where |OTF| falls below this are zeroed by the nsr=0
# pseudo-inverse rule instead of being divided through.
PSEUDO_INVERSE_CUTOFF = 1e-12


class BracketError(ValueError):
    """Raised when a target residual power is unreachable inside the lambda range."""

    def __init__(self, message: str, residual_lo: float, residual_hi: float):
        super().__init__(message)
        self.residual_lo = residual_lo
        self.residual_hi = residual_hi


@dataclass(frozen=True)
class RegResult:
    """Regularized deconvolution output: image, lambda used/found, residual power."""

    image: np.ndarray
    lam: float
    residual_power: float


def _validate_kernel(kernel, shape) -> np.ndarray:
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2:
        raise ValueError("kernel must be 2D")
    if kernel.shape[0] > shape[0] or kernel.shape[1] > shape[1]:
        raise ValueError(f"kernel {kernel.shape} larger than image {tuple(shape)}")
    return kernel


def wiener(blurred, kernel, nsr: float = 0.0) -> np.ndarray:
    """Wiener deconvolution with noise-to-signal power ratio `nsr`.

    Per frequency: X = conj(H) * B / (|H|^2 + nsr). With nsr == 0 this is
    the pseudo-inverse: frequencies where |H| < 1e-12 are set to zero
    rather than amplified.
    """
    b = as_image(blurred)
    kernel = _validate_kernel(kernel, b.shape)
    if not (nsr >= 0.0) or not math.isfinite(nsr):
        raise ValueError(f"nsr must be finite and >= 0, got {nsr}")
    otf = psf_to_otf(kernel, b.shape)
    spectrum = np.fft.fft2(b)
    power = (otf * otf.conj()).real
    if nsr == 0.0:
        dead = np.abs(otf) < PSEUDO_INVERSE_CUTOFF
        restored = np.where(dead, 0.0, otf.conj() * spectrum / np.where(dead, 1.0, power))
    else:
        restored = otf.conj() * spectrum / (power + nsr)
    return np.fft.ifft2(restored).real


def richardson_lucy(blurred, kernel, iterations: int, epsilon: float = 1e-12,
                    initial=None) -> np.ndarray:
    """Richardson-Lucy deconvolution: `iterations` multiplicative updates.

    The observed image is clamped at zero on entry. Updates are
    x <- x * (k_rot (*) (b / (k (*) x))) with circular convolution, where
    k_rot is the 180-degree rotated kernel; denominators below `epsilon`
    are substituted with `epsilon`. The default initial estimate is the
    observed image itself, so running n iterations and then m more (passing
    the intermediate back as `initial`) is bit-identical to running n + m.
    """
    b = np.maximum(as_image(blurred), 0.0)
    kernel = _validate_kernel(kernel, b.shape)
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if not (epsilon > 0.0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if abs(kernel.sum() - 1.0) > 1e-9:
        raise ValueError("richardson_lucy requires a unit-sum kernel")
    if not b.any():
        raise ValueError("observed image is all zero after clamping")

    estimate = b if initial is None else np.maximum(as_image(initial), 0.0)
    if estimate.shape != b.shape:
        raise ValueError(f"initial estimate shape {estimate.shape} != image {b.shape}")
    rotated = np.ascontiguousarray(kernel[::-1, ::-1])
    for _ in range(iterations):
        denom = np.maximum(convolve(estimate, kernel, "circular"), epsilon)
        estimate = estimate * convolve(b / denom, rotated, "circular")
    return estimate


def _regularizer_otf(kernel: np.ndarray, shape) -> np.ndarray:
    # Operator extent matches the PSF, with singleton dimensions promoted
    # to 3 so the 2D stencil always fits.
    rows = kernel.shape[0] if kernel.shape[0] > 1 else 3
    cols = kernel.shape[1] if kernel.shape[1] > 1 else 3
    return psf_to_otf(laplacian_operator(rows, cols), shape)


def _reg_solve(spectrum, otf, reg_power, lam: float) -> np.ndarray:
    denom = (otf * otf.conj()).real + lam * reg_power
    dead = denom == 0.0
    restored = np.where(dead, 0.0, otf.conj() * spectrum / np.where(dead, 1.0, denom))
    return np.fft.ifft2(restored).real


def regularized(blurred, kernel, lam: float | None = None,
                noise_power: float | None = None,
                lambda_range: tuple[float, float] = (1e-9, 1e2),
                tolerance: float = 1e-3,
                max_iterations: int = 200) -> RegResult:
    """Laplacian-regularized least squares deconvolution.

    Per frequency: X = conj(H) * B / (|H|^2 + lam * |L|^2), where L is the
    transfer function of the zero-embedded Laplacian stencil sized to match
    the PSF. Exactly one of `lam` and `noise_power` must be given:

    * `lam`: solve once with that fixed multiplier.
    * `noise_power`: find lam such that the mean squared residual
      (1/N) * sum((k (*) x) - b)^2 matches `noise_power` within the relative
      `tolerance`, by bisection on log10(lam) over `lambda_range`. Residual
      power is monotonically non-decreasing in lam, so bisection is valid.
      Raises BracketError (with the residual power at both endpoints) when
      the target is outside the achievable range.

    The solve mode finishes by re-solving at the found lam through the same
    code path as the fixed mode, so re-running with `lam=result.lam`
    reproduces `result.image` bit for bit.
    """
    b = as_image(blurred)
    kernel = _validate_kernel(kernel, b.shape)
    if (lam is None) == (noise_power is None):
        raise ValueError("pass exactly one of lam= or noise_power=")

    otf = psf_to_otf(kernel, b.shape)
    spectrum = np.fft.fft2(b)
    reg_otf = _regularizer_otf(kernel, b.shape)
    reg_power = (reg_otf * reg_otf.conj()).real

    def solve(lam_value: float) -> tuple[np.ndarray, float]:
        image = _reg_solve(spectrum, otf, reg_power, lam_value)
        diff = convolve(image, kernel, "circular") - b
        return image, float(np.mean(diff * diff))

    if lam is not None:
        if not (lam >= 0.0) or not math.isfinite(lam):
            raise ValueError(f"lambda must be finite and >= 0, got {lam}")
        image, residual = solve(lam)
        return RegResult(image=image, lam=lam, residual_power=residual)

    lo, hi = lambda_range
    if not (0.0 <= lo < hi):
        raise ValueError(f"lambda_range must satisfy 0 <= lo < hi, got {lambda_range}")
    if not (noise_power >= 0.0) or not math.isfinite(noise_power):
        raise ValueError(f"noise_power must be finite and >= 0, got {noise_power}")
    if not (tolerance > 0.0):
        raise ValueError(f"tolerance must be positive, got {tolerance}")

    def within(residual: float) -> bool:
        return abs(residual - noise_power) <= tolerance * noise_power

    _, res_lo = solve(lo)
    _, res_hi = solve(hi)
    if within(res_lo):
        image, residual = solve(lo)
        return RegResult(image=image, lam=lo, residual_power=residual)
    if within(res_hi):
        image, residual = solve(hi)
        return RegResult(image=image, lam=hi, residual_power=residual)
    if not res_lo < noise_power < res_hi:
        raise BracketError(
            f"target residual power {noise_power:.6g} not bracketed by "
            f"lambda_range {lambda_range}: residual({lo:.6g}) = {res_lo:.6g}, "
            f"residual({hi:.6g}) = {res_hi:.6g}",
            residual_lo=res_lo, residual_hi=res_hi)

    # log-domain bisection; a zero lower endpoint is replaced by a subnormal
    # floor purely for the midpoint geometry
    log_lo = math.log10(lo) if lo > 0.0 else -300.0
    log_hi = math.log10(hi)
    for _ in range(max_iterations):
        mid = 10.0 ** ((log_lo + log_hi) / 2.0)
        _, res_mid = solve(mid)
        if within(res_mid):
            image, residual = solve(mid)
            return RegResult(image=image, lam=mid, residual_power=residual)
        if res_mid < noise_power:
            log_lo = math.log10(mid)
        else:
            log_hi = math.log10(mid)
    raise RuntimeError(
        f"lambda bisection did not reach tolerance {tolerance} in {max_iterations} iterations")
