"""DFT contract and PSF-to-OTF tests against naive double-sum oracles."""
import numpy as np
import pytest

from deblur_bench.degrade import convolve
from deblur_bench.psf import gaussian_psf, motion_psf
from deblur_bench.spectral import dft2, idft2, psf_to_otf


def _naive_dft2(grid):
    height, width = grid.shape
    out = np.zeros((height, width), dtype=complex)
    for u in range(height):
        for v in range(width):
            acc = 0.0j
            for m in range(height):
                for n in range(width):
                    acc += grid[m, n] * np.exp(-2j * np.pi * (u * m / height + v * n / width))
            out[u, v] = acc
    return out


def _naive_otf(kernel, shape):
    # H(u, v) = sum_k k[a, b] * exp(-2*pi*i*(u*(a - cr)/H + v*(b - cc)/W)),
    # i.e. the transfer function of the center-anchored kernel
    height, width = shape
    krows, kcols = kernel.shape
    cr, cc = krows // 2, kcols // 2
    out = np.zeros((height, width), dtype=complex)
    for u in range(height):
        for v in range(width):
            acc = 0.0j
            for a in range(krows):
                for b in range(kcols):
                    acc += kernel[a, b] * np.exp(
                        -2j * np.pi * (u * (a - cr) / height + v * (b - cc) / width))
            out[u, v] = acc
    return out


def test_round_trip_at_benchmark_dimensions():
    rng = np.random.default_rng(40)
    img = rng.uniform(0, 255, (183, 275))
    back = idft2(dft2(img))
    assert np.abs(back.real - img).max() <= 1e-10
    assert np.abs(back.imag).max() <= 1e-10


def test_constant_image_transform():
    img = np.full((11, 13), 3.25)
    spectrum = dft2(img)
    assert abs(spectrum[0, 0] - 3.25 * 11 * 13) <= 1e-9
    spectrum[0, 0] = 0.0
    assert np.abs(spectrum).max() <= 1e-9


def test_dft2_matches_naive_double_sum():
    rng = np.random.default_rng(41)
    grid = rng.uniform(-1, 1, (4, 5))
    assert np.abs(dft2(grid) - _naive_dft2(grid)).max() <= 1e-10


def test_idft2_inverts_naive_dft():
    rng = np.random.default_rng(42)
    grid = rng.uniform(-1, 1, (5, 4))
    assert np.abs(idft2(_naive_dft2(grid)).real - grid).max() <= 1e-10


def test_linearity():
    rng = np.random.default_rng(43)
    x = rng.uniform(0, 1, (8, 6))
    y = rng.uniform(0, 1, (8, 6))
    lhs = dft2(2.5 * x - 1.5 * y)
    rhs = 2.5 * dft2(x) - 1.5 * dft2(y)
    assert np.abs(lhs - rhs).max() <= 1e-10


def test_parseval():
    rng = np.random.default_rng(44)
    x = rng.uniform(0, 255, (23, 17))
    spatial = np.sum(np.abs(x) ** 2)
    spectral = np.sum(np.abs(dft2(x)) ** 2) / x.size
    assert abs(spatial - spectral) / spatial <= 1e-9


def test_psf_to_otf_delta_is_all_ones():
    otf = psf_to_otf([[1.0]], (6, 7))
    assert np.abs(otf - 1.0).max() <= 1e-12


def test_psf_to_otf_unit_dc_gain():
    for kernel in (gaussian_psf(5, 7), motion_psf(15, 11), gaussian_psf(3, 0.7)):
        otf = psf_to_otf(kernel, (32, 48))
        assert abs(otf[0, 0] - 1.0) <= 1e-12


def test_psf_to_otf_matches_naive_transfer_function():
    rng = np.random.default_rng(45)
    kernel = rng.uniform(0, 1, (3, 3))
    kernel /= kernel.sum()
    otf = psf_to_otf(kernel, (4, 5))
    assert np.abs(otf - _naive_otf(kernel, (4, 5))).max() <= 1e-10


def test_psf_to_otf_even_kernel_dimensions():
    rng = np.random.default_rng(46)
    kernel = rng.uniform(0, 1, (2, 4))
    otf = psf_to_otf(kernel, (6, 8))
    assert np.abs(otf - _naive_otf(kernel, (6, 8))).max() <= 1e-10


def test_circular_convolution_theorem():
    rng = np.random.default_rng(47)
    for _ in range(5):
        img = rng.uniform(0, 255, (16, 16))
        kernel = rng.uniform(0, 1, (3, 3))
        kernel /= kernel.sum()
        spatial = convolve(img, kernel, "circular")
        spectral = idft2(dft2(img) * psf_to_otf(kernel, img.shape)).real
        assert np.abs(spatial - spectral).max() <= 1e-9


def test_conjugate_symmetry_for_real_kernels():
    rng = np.random.default_rng(48)
    kernel = rng.uniform(0, 1, (3, 5))
    otf = psf_to_otf(kernel, (9, 12))
    height, width = otf.shape
    flipped = otf[(-np.arange(height)) % height][:, (-np.arange(width)) % width]
    assert np.abs(otf - np.conj(flipped)).max() <= 1e-12


def test_symmetric_kernel_gives_real_otf():
    for kernel, shape in ((gaussian_psf(5, 2.0), (24, 30)),
                          (motion_psf(15, 11), (32, 40))):
        otf = psf_to_otf(kernel, shape)
        assert np.abs(otf.imag).max() <= 1e-10


def test_validation():
    with pytest.raises(ValueError):
        psf_to_otf(np.ones((5, 5)), (3, 3))
    with pytest.raises(ValueError):
        dft2(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        idft2(np.zeros(4))
