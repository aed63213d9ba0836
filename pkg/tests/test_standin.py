"""Stand-in asset tests: the committed PGM must match the generator."""
import numpy as np

from deblur_bench.standin import load_standin, smooth_image, standin_image


def test_committed_asset_matches_generator():
    assert np.array_equal(load_standin(), standin_image())


def test_standin_shape_and_range(standin):
    assert standin.shape == (183, 275)
    assert standin.min() > 0.0 and standin.max() < 255.0
    assert np.array_equal(standin, np.floor(standin))


def test_smooth_image_is_column_constant():
    img = smooth_image()
    assert img.shape == (183, 275)
    assert np.all(img == img[0:1, :])
    assert img.min() > 0.0 and img.max() < 255.0
