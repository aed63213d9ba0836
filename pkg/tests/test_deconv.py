"""Deconvolution method tests: Wiener, Richardson-Lucy, regularized."""
import math

import numpy as np
import pytest

from deblur_bench.core import rmse
from deblur_bench.deconv import (BracketError, regularized, richardson_lucy,
                                 wiener)
from deblur_bench.degrade import convolve
from deblur_bench.psf import gaussian_psf, motion_psf
from deblur_bench.spectral import dft2, psf_to_otf


def _random_unit_kernel(rng, shape=(3, 3)):
    kernel = rng.uniform(0, 1, shape)
    return kernel / kernel.sum()


def _naive_wiener(blurred, kernel, nsr):
    """Frequency-by-frequency Wiener filter via naive double-sum DFTs."""
    height, width = blurred.shape
    krows, kcols = kernel.shape
    cr, cc = krows // 2, kcols // 2
    spectrum = np.zeros((height, width), dtype=complex)
    otf = np.zeros((height, width), dtype=complex)
    for u in range(height):
        for v in range(width):
            acc_b = 0.0j
            for m in range(height):
                for n in range(width):
                    acc_b += blurred[m, n] * np.exp(
                        -2j * np.pi * (u * m / height + v * n / width))
            spectrum[u, v] = acc_b
            acc_h = 0.0j
            for a in range(krows):
                for b in range(kcols):
                    acc_h += kernel[a, b] * np.exp(
                        -2j * np.pi * (u * (a - cr) / height + v * (b - cc) / width))
            otf[u, v] = acc_h
    restored = np.conj(otf) * spectrum / (np.abs(otf) ** 2 + nsr)
    out = np.zeros((height, width))
    for m in range(height):
        for n in range(width):
            acc = 0.0j
            for u in range(height):
                for v in range(width):
                    acc += restored[u, v] * np.exp(
                        2j * np.pi * (u * m / height + v * n / width))
            out[m, n] = acc.real / (height * width)
    return out


def test_wiener_delta_identity():
    rng = np.random.default_rng(50)
    img = rng.uniform(0, 255, (12, 10))
    assert np.abs(wiener(img, [[1.0]], 0.0) - img).max() <= 1e-10


def test_wiener_matches_naive_oracle():
    rng = np.random.default_rng(51)
    img = rng.uniform(0, 255, (4, 4))
    kernel = _random_unit_kernel(rng)
    expected = _naive_wiener(img, kernel, 0.01)
    assert np.abs(wiener(img, kernel, 0.01) - expected).max() <= 1e-10


def test_wiener_exact_inversion_round_trip(standin):
    kernel = gaussian_psf(5, 7)
    otf = psf_to_otf(kernel, standin.shape)
    assert np.abs(otf).min() > 1e-7  # no true zeros at 183x275
    blurred = convolve(standin, kernel, "circular")
    assert rmse(wiener(blurred, kernel, 0.0), standin) < 1e-6


def test_wiener_large_nsr_drives_output_to_zero():
    rng = np.random.default_rng(52)
    img = rng.uniform(0, 255, (16, 16))
    kernel = _random_unit_kernel(rng)
    energies = [float(np.sum(wiener(img, kernel, nsr) ** 2))
                for nsr in (1.0, 10.0, 100.0)]
    assert energies[0] > energies[1] > energies[2]
    assert np.abs(wiener(img, kernel, 1e9)).max() < 1e-3


def test_wiener_validation():
    img = np.zeros((4, 4))
    with pytest.raises(ValueError):
        wiener(img, np.ones((5, 5)) / 25.0, 0.0)
    with pytest.raises(ValueError):
        wiener(img, [[1.0]], -0.5)


def test_richardson_lucy_delta_fixed_point():
    rng = np.random.default_rng(53)
    img = rng.uniform(1, 255, (10, 10))
    assert np.array_equal(richardson_lucy(img, [[1.0]], 7), img)


def test_richardson_lucy_iteration_composability():
    rng = np.random.default_rng(54)
    img = rng.uniform(0, 255, (16, 16))
    kernel = _random_unit_kernel(rng)
    full = richardson_lucy(img, kernel, 10)
    half = richardson_lucy(img, kernel, 5)
    resumed = richardson_lucy(img, kernel, 5, initial=half)
    assert np.array_equal(resumed, full)


def test_richardson_lucy_flux_and_positivity():
    rng = np.random.default_rng(55)
    for _ in range(5):
        img = rng.uniform(0.5, 255, (16, 16))
        kernel = _random_unit_kernel(rng)
        estimate = None
        for _ in range(8):
            estimate = richardson_lucy(img, kernel, 1, initial=estimate)
            assert estimate.min() >= 0.0
            assert abs(estimate.sum() - img.sum()) / img.sum() <= 1e-9


def test_richardson_lucy_clamps_negative_input():
    rng = np.random.default_rng(56)
    img = rng.uniform(-20, 255, (12, 12))
    kernel = _random_unit_kernel(rng)
    clamped = np.maximum(img, 0.0)
    assert np.array_equal(richardson_lucy(img, kernel, 3),
                          richardson_lucy(clamped, kernel, 3))


def test_richardson_lucy_validation():
    kernel = np.full((3, 3), 1.0 / 9.0)
    with pytest.raises(ValueError):
        richardson_lucy(np.full((6, 6), -5.0), kernel, 3)  # all zero after clamp
    with pytest.raises(ValueError):
        richardson_lucy(np.ones((6, 6)), np.ones((3, 3)), 3)  # not unit sum
    with pytest.raises(ValueError):
        richardson_lucy(np.ones((6, 6)), kernel, 0)
    with pytest.raises(ValueError):
        richardson_lucy(np.ones((6, 6)), kernel, 3, epsilon=0.0)
    with pytest.raises(ValueError):
        richardson_lucy(np.ones((6, 6)), kernel, 3, initial=np.ones((5, 5)))


def test_regularized_identity_at_zero_lambda():
    rng = np.random.default_rng(57)
    img = rng.uniform(0, 255, (9, 11))
    result = regularized(img, [[1.0]], lam=0.0)
    assert np.abs(result.image - img).max() <= 1e-10
    assert result.lam == 0.0
    assert result.residual_power <= 1e-18


def test_regularized_residual_monotone_in_lambda():
    rng = np.random.default_rng(58)
    img = rng.uniform(0, 255, (16, 16))
    kernel = _random_unit_kernel(rng)
    residuals = [regularized(img, kernel, lam=lam).residual_power
                 for lam in (1e-6, 1e-4, 1e-2, 1.0)]
    assert residuals == sorted(residuals)


def test_regularized_solve_self_consistency():
    rng = np.random.default_rng(59)
    img = rng.uniform(20, 230, (32, 32))
    kernel = gaussian_psf(3, 1.0)
    noise = rng.normal(0.0, 4.0, img.shape)
    target = float(np.mean(noise ** 2))
    observed = convolve(img, kernel, "circular") + noise
    result = regularized(observed, kernel, noise_power=target, tolerance=1e-3)
    assert abs(result.residual_power - target) <= 0.01 * target
    refixed = regularized(observed, kernel, lam=result.lam)
    assert np.array_equal(refixed.image, result.image)
    assert refixed.residual_power == result.residual_power


def test_regularized_bracket_error_reports_endpoints():
    rng = np.random.default_rng(60)
    img = rng.uniform(0, 255, (16, 16))
    kernel = _random_unit_kernel(rng)
    with pytest.raises(BracketError) as info:
        regularized(img, kernel, noise_power=1e12)
    assert info.value.residual_lo >= 0.0
    assert info.value.residual_hi >= info.value.residual_lo
    with pytest.raises(BracketError):
        regularized(img, kernel, noise_power=500.0, lambda_range=(1e-9, 2e-9))


def test_regularized_high_frequency_energy_decreases_with_lambda():
    rng = np.random.default_rng(61)
    img = rng.uniform(0, 255, (16, 16))
    kernel = _random_unit_kernel(rng)
    height, width = img.shape
    u = np.minimum(np.arange(height), height - np.arange(height))[:, None]
    v = np.minimum(np.arange(width), width - np.arange(width))[None, :]
    high_band = (u > height // 8) | (v > width // 8)
    energies = []
    for lam in (1e-6, 1e-4, 1e-2, 1.0):
        spectrum = dft2(regularized(img, kernel, lam=lam).image)
        energies.append(float(np.sum(np.abs(spectrum[high_band]) ** 2)))
    assert all(energies[i] >= energies[i + 1] for i in range(len(energies) - 1))


def test_regularized_validation():
    img = np.zeros((8, 8))
    kernel = np.full((3, 3), 1.0 / 9.0)
    with pytest.raises(ValueError):
        regularized(img, kernel)
    with pytest.raises(ValueError):
        regularized(img, kernel, lam=0.1, noise_power=1.0)
    with pytest.raises(ValueError):
        regularized(img, kernel, lam=-1.0)
    with pytest.raises(ValueError):
        regularized(img, kernel, noise_power=1.0, lambda_range=(1.0, 0.5))


def test_all_methods_translation_equivariant():
    rng = np.random.default_rng(62)
    img = rng.uniform(1, 255, (16, 16))
    kernel = _random_unit_kernel(rng)
    shift = (5, -3)

    def shifted(x):
        return np.roll(x, shift, axis=(0, 1))

    for method in (
        lambda x: wiener(x, kernel, 0.05),
        lambda x: richardson_lucy(x, kernel, 5),
        lambda x: regularized(x, kernel, lam=1e-3).image,
    ):
        assert np.abs(method(shifted(img)) - shifted(method(img))).max() <= 1e-9


def test_all_methods_reduce_error_on_clean_blur(standin):
    for kernel in (motion_psf(15, 11), gaussian_psf(5, 7)):
        blurred = convolve(standin, kernel, "circular")
        baseline = rmse(blurred, standin)
        assert rmse(wiener(blurred, kernel, 0.0), standin) < baseline
        assert rmse(richardson_lucy(blurred, kernel, 10), standin) < baseline
        assert rmse(regularized(blurred, kernel, lam=1e-6).image, standin) < baseline
