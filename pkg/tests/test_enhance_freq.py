import numpy as np
import pytest

from qalpha.enhance_freq import (AlphaParams, alpha_root_channel, alpha_root_complex,
                                 alpha_root_spectrum, enhance_dft_channelwise, enhance_qdft)
from qalpha.qdft import QSpectrum
from qalpha.qimage import RgbImage
from qalpha.quat_core import qabs


@pytest.mark.parametrize("bad", [0.0, -0.1, 1.0001, 2.0])
def test_alpha_range(bad):
    with pytest.raises(ValueError):
        AlphaParams(bad)
    with pytest.raises(ValueError):
        AlphaParams(0.9, alpha_g=bad)
    with pytest.raises(ValueError):
        alpha_root_spectrum(QSpectrum(np.ones((2, 2, 4))), bad)


def test_channel_alphas_default_to_alpha():
    assert AlphaParams(0.9).channel_alphas == (0.9, 0.9, 0.9)
    assert AlphaParams(0.9, alpha_g=0.8).channel_alphas == (0.9, 0.8, 0.9)


def test_alpha_one_is_identity(rng):
    F = QSpectrum(rng.normal(size=(5, 4, 4)))
    np.testing.assert_array_equal(alpha_root_spectrum(F, 1.0).coeffs, F.coeffs)


def test_magnitude_hundred_to_ten():
    u = np.array([0.5, -0.5, 0.5, 0.5])
    F = np.zeros((1, 2, 4))
    F[0, 1] = 100 * u
    out = alpha_root_spectrum(QSpectrum(F), 0.5).coeffs
    assert qabs(out[0, 1]) == pytest.approx(10.0, rel=1e-15)
    np.testing.assert_allclose(out[0, 1] / 10.0, u, rtol=1e-15)
    np.testing.assert_array_equal(out[0, 0], 0.0)


def test_random_spectrum_rooting(rng):
    F = rng.normal(size=(8, 8, 4)) * rng.uniform(0.1, 1e4, size=(8, 8, 1))
    out = alpha_root_spectrum(QSpectrum(F), 0.9).coeffs
    mag_in = np.sqrt((F ** 2).sum(-1))
    mag_out = np.sqrt((out ** 2).sum(-1))
    np.testing.assert_allclose(mag_out / mag_in ** 0.9, 1.0, rtol=1e-12)
    np.testing.assert_allclose(out / mag_out[..., None], F / mag_in[..., None], atol=1e-12)


def test_preserve_dc(rng):
    F = rng.normal(size=(4, 4, 4)) * 50
    out = alpha_root_spectrum(QSpectrum(F), AlphaParams(0.7, preserve_dc=True)).coeffs
    np.testing.assert_array_equal(out[0, 0], F[0, 0])
    assert not np.allclose(out[1, 1], F[1, 1])


def test_complex_rooting_keeps_phase(rng):
    X = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    X[2, 3] = 0
    Y = alpha_root_complex(X, 0.8)
    nz = X != 0
    np.testing.assert_allclose(np.abs(Y[nz]), np.abs(X[nz]) ** 0.8, rtol=1e-12)
    np.testing.assert_allclose(np.angle(Y[nz]), np.angle(X[nz]), atol=1e-12)
    assert Y[2, 3] == 0


def test_rooting_map_monotone_concave():
    m = np.linspace(0.01, 1e4, 5001)
    for alpha in (0.5, 0.8, 0.97):
        y = m ** alpha
        assert np.all(np.diff(y) > 0)
        assert np.all(np.diff(y, 2) < 0)


def test_qdft_identity_at_alpha_one(random_rgb):
    img = random_rgb(16, 12)
    out = enhance_qdft(img, AlphaParams(1.0), clip=False)
    assert np.abs(out.rgb.data - img.data).max() <= 1e-6
    assert np.abs(out.scalar).max() <= 1e-6


def test_dft_identity_at_alpha_one(random_rgb):
    img = random_rgb(15, 9)
    out = enhance_dft_channelwise(img, AlphaParams(1.0), clip=False)
    assert np.abs(out.data - img.data).max() <= 1e-6


def test_constant_gray_with_preserve_dc():
    img = RgbImage(np.full((8, 8, 3), 128.0))
    out = enhance_qdft(img, AlphaParams(0.8, preserve_dc=True))
    np.testing.assert_allclose(out.rgb.data, img.data, atol=1e-9)
    np.testing.assert_allclose(out.scalar, 0.0, atol=1e-9)
    out = enhance_dft_channelwise(img, AlphaParams(0.8, preserve_dc=True))
    np.testing.assert_allclose(out.data, img.data, atol=1e-9)


def test_spectrum_reuse_gives_identical_result(random_rgb):
    from qalpha.qdft import qdft_two_sided_fast
    from qalpha.qimage import rgb_to_quaternion
    img = random_rgb(10, 10)
    spec = qdft_two_sided_fast(rgb_to_quaternion(img))
    a = enhance_qdft(img, 0.9)
    b = enhance_qdft(img, 0.9, spectrum=spec)
    np.testing.assert_array_equal(a.rgb.data, b.rgb.data)
    np.testing.assert_array_equal(a.scalar, b.scalar)


def test_impulse_channel():
    # a delta has a flat spectrum of height v; rooting scales it to v**alpha everywhere,
    # so the result is the same delta scaled by v**(alpha - 1)
    v, alpha = 200.0, 0.9
    chan = np.zeros((8, 6))
    chan[0, 0] = v
    out = alpha_root_channel(chan, alpha)
    expect = chan * v ** (alpha - 1)
    np.testing.assert_allclose(out.real, expect, atol=1e-12)
    np.testing.assert_allclose(out.imag, 0.0, atol=1e-12)
    img = RgbImage(np.stack([chan, np.zeros_like(chan), np.zeros_like(chan)], -1))
    rgb = enhance_dft_channelwise(img, AlphaParams(1.0, alpha_r=alpha))
    np.testing.assert_allclose(rgb.r, expect, atol=1e-12)


def test_channel_imaginary_residue_small(rng):
    chan = rng.uniform(0, 255, size=(17, 11))
    out = alpha_root_channel(chan, 0.85)
    assert np.abs(out.imag).max() <= 1e-9 * 255


def test_qdft_direction_preserved_end_to_end(random_rgb):
    from qalpha.qdft import qdft_two_sided_fast
    from qalpha.qimage import rgb_to_quaternion
    img = random_rgb(8, 8)
    F = qdft_two_sided_fast(rgb_to_quaternion(img)).coeffs
    G = alpha_root_spectrum(QSpectrum(F), 0.93).coeffs
    mF, mG = qabs(F), qabs(G)
    nz = mF > 0
    np.testing.assert_allclose(G[nz] / mG[nz, None], F[nz] / mF[nz, None], atol=1e-12)


def test_enhanced_output_clipped(random_rgb):
    img = random_rgb(16, 16)
    out = enhance_qdft(img, 0.8)
    assert out.rgb.data.min() >= 0 and out.rgb.data.max() <= 255
    out = enhance_dft_channelwise(img, 0.8)
    assert out.data.min() >= 0 and out.data.max() <= 255
