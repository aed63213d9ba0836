"""Shared fixtures: the stand-in image, degraded pipelines, and one full run."""
import pytest

from deblur_bench.core import quantize
from deblur_bench.degrade import NoiseSpec, add_salt_pepper, convolve
from deblur_bench.denoise import adaptive_median
from deblur_bench.psf import gaussian_psf, motion_psf
from deblur_bench.report import ScenarioConfig, run_paper
from deblur_bench.standin import standin_image


@pytest.fixture(scope="session")
def standin():
    return standin_image()


@pytest.fixture(scope="session")
def pipelines(standin):
    """Blur/noise/denoise chains for both blur types at the default settings."""
    out = {}
    for blur_type, kernel in (("motion", motion_psf(15, 11)),
                              ("gaussian", gaussian_psf(5, 7))):
        blurred = quantize(convolve(standin, kernel, "circular"))
        noisy = quantize(add_salt_pepper(blurred, NoiseSpec(density=0.07, seed=2022)))
        denoised = quantize(adaptive_median(noisy, 5))
        out[blur_type] = {"kernel": kernel, "blurred": blurred,
                          "noisy": noisy, "denoised": denoised}
    return out


@pytest.fixture(scope="session")
def paper_run(tmp_path_factory):
    """One default benchmark run, shared by report and acceptance tests."""
    outdir = tmp_path_factory.mktemp("paper-run")
    config = ScenarioConfig(output_dir=str(outdir))
    report = run_paper(config)
    return config, report, outdir
