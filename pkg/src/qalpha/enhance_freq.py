"""Alpha-rooting in the frequency domain.

Every coefficient keeps its direction and has its magnitude raised to the
power alpha: ``F -> |F|^(alpha - 1) * F``.  The quaternion path does this on
the two-sided QDFT of the whole colour image; the baseline path does it on
the complex 2-D DFT of each channel separately.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .qdft import QSpectrum, iqdft_two_sided, qdft_two_sided_fast
from .qimage import RgbImage, rgb_to_quaternion
from .quat_core import qabs


def check_alpha(alpha: float, name: str = "alpha") -> float:
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"{name} must lie in (0, 1], got {alpha}")
    return alpha


@dataclass(frozen=True)
class AlphaParams:
    """Rooting exponents.

    `alpha` drives the quaternion path.  The per-channel exponents default
    to `alpha` when left unset.
    """

    alpha: float = 1.0
    alpha_r: float | None = None
    alpha_g: float | None = None
    alpha_b: float | None = None
    preserve_dc: bool = False

    def __post_init__(self):
        check_alpha(self.alpha)
        for name in ("alpha_r", "alpha_g", "alpha_b"):
            value = getattr(self, name)
            if value is not None:
                check_alpha(value, name)

    @property
    def channel_alphas(self) -> tuple[float, float, float]:
        return tuple(self.alpha if a is None else a
                     for a in (self.alpha_r, self.alpha_g, self.alpha_b))


class QdftEnhanced(NamedTuple):
    rgb: RgbImage
    scalar: np.ndarray  # residual scalar plane of the inverse transform, unclipped


def _root_factor(mag: np.ndarray, alpha: float) -> np.ndarray:
    factor = np.zeros_like(mag)
    nz = mag > 0
    factor[nz] = mag[nz] ** (alpha - 1.0)
    return factor


def alpha_root_spectrum(F: QSpectrum, params: AlphaParams | float) -> QSpectrum:
    """Map ``|F(p,s)| -> |F(p,s)|^alpha`` keeping each unit quaternion."""
    if not isinstance(params, AlphaParams):
        params = AlphaParams(alpha=params)
    alpha = check_alpha(params.alpha)
    coeffs = F.coeffs
    if alpha == 1.0:
        return QSpectrum(coeffs.copy())
    out = coeffs * _root_factor(qabs(coeffs), alpha)[..., None]
    if params.preserve_dc:
        out[0, 0] = coeffs[0, 0]
    return QSpectrum(out)


def alpha_root_complex(X: np.ndarray, alpha: float, preserve_dc: bool = False) -> np.ndarray:
    """Complex-spectrum counterpart of :func:`alpha_root_spectrum`."""
    alpha = check_alpha(alpha)
    if alpha == 1.0:
        return X.copy()
    out = X * _root_factor(np.abs(X), alpha)
    if preserve_dc:
        out[0, 0] = X[0, 0]
    return out


def enhance_qdft(img: RgbImage, params: AlphaParams | float, *,
                 spectrum: QSpectrum | None = None,
                 scalar_policy: str = "zero",
                 clip: bool = True) -> QdftEnhanced:
    """Quaternion alpha-rooting of a colour image.

    Pass `spectrum` to reuse a forward transform across several alphas; it
    must be the QDFT of `img` under the same `scalar_policy`.
    """
    if not isinstance(params, AlphaParams):
        params = AlphaParams(alpha=params)
    if spectrum is None:
        spectrum = qdft_two_sided_fast(rgb_to_quaternion(img, scalar_policy))
    rooted = alpha_root_spectrum(spectrum, params)
    out = iqdft_two_sided(rooted, img.value_scale).pixels
    rgb = out[..., 1:]
    if clip:
        rgb = np.clip(rgb, 0.0, img.value_scale)
    return QdftEnhanced(RgbImage(rgb, img.value_scale), out[..., 0].copy())


def alpha_root_channel(channel: np.ndarray, alpha: float, preserve_dc: bool = False) -> np.ndarray:
    """DFT, root and inverse-DFT one real channel; returns the complex result."""
    X = np.fft.fft2(np.asarray(channel, dtype=float))
    return np.fft.ifft2(alpha_root_complex(X, alpha, preserve_dc))


def enhance_dft_channelwise(img: RgbImage, params: AlphaParams | float, *,
                            clip: bool = True) -> RgbImage:
    """Channel-by-channel alpha-rooting with ordinary complex 2-D DFTs."""
    if not isinstance(params, AlphaParams):
        params = AlphaParams(alpha=params)
    out = np.empty_like(img.data)
    for c, alpha in enumerate(params.channel_alphas):
        out[..., c] = alpha_root_channel(img.data[..., c], alpha, params.preserve_dc).real
    if clip:
        np.clip(out, 0.0, img.value_scale, out=out)
    return RgbImage(out, img.value_scale)
