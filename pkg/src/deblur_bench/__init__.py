"""Grayscale image restoration: degradation simulation, denoising, deblurring."""

from .core import (StatsRow, as_image, image_stats, load_image, mean,
                   quantize, rmse, save_image, snr, stddev)
from .deconv import BracketError, RegResult, regularized, richardson_lucy, wiener
from .degrade import (BOUNDARY_MODES, NoiseSpec, SplitMix64, add_salt_pepper,
                      convolve, degrade)
from .denoise import adaptive_median
from .psf import (gaussian_psf, kernel_from_text, kernel_to_text, laplacian_operator,
                  load_kernel, motion_psf, save_kernel)
from .spectral import dft2, idft2, psf_to_otf
from .standin import load_standin, smooth_image, standin_image, standin_path

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY_MODES",
    "BracketError",
    "NoiseSpec",
    "RegResult",
    "SplitMix64",
    "StatsRow",
    "adaptive_median",
    "add_salt_pepper",
    "as_image",
    "convolve",
    "degrade",
    "dft2",
    "gaussian_psf",
    "idft2",
    "image_stats",
    "kernel_from_text",
    "kernel_to_text",
    "laplacian_operator",
    "load_image",
    "load_kernel",
    "load_standin",
    "mean",
    "motion_psf",
    "psf_to_otf",
    "quantize",
    "regularized",
    "richardson_lucy",
    "rmse",
    "save_image",
    "save_kernel",
    "smooth_image",
    "snr",
    "standin_image",
    "standin_path",
    "stddev",
    "wiener",
]
