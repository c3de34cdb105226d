"""HSV conversion and histogram equalization of the value channel."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qimage import RgbImage

DEFAULT_BINS = 256


@dataclass
class HsvImage:
    """H in degrees [0, 360), S and V in [0, 1]."""

    h: np.ndarray
    s: np.ndarray
    v: np.ndarray
    value_scale: float = 255.0


def rgb_to_hsv(img: RgbImage) -> HsvImage:
    rgb = img.data / img.value_scale
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    maxc = rgb.max(axis=-1)
    minc = rgb.min(axis=-1)
    delta = maxc - minc

    s = np.zeros_like(maxc)
    np.divide(delta, maxc, out=s, where=maxc > 0)

    chroma = delta > 0
    safe = np.where(chroma, delta, 1.0)
    hr = np.mod((g - b) / safe, 6.0)
    hg = (b - r) / safe + 2.0
    hb = (r - g) / safe + 4.0
    # same precedence as colorsys: red wins ties, then green
    sector = np.where(maxc == r, hr, np.where(maxc == g, hg, hb))
    h = np.where(chroma, 60.0 * sector, 0.0)
    h = np.where(h >= 360.0, h - 360.0, h)
    return HsvImage(h, s, maxc, img.value_scale)


def hsv_to_rgb(hsv: HsvImage) -> RgbImage:
    h6 = np.asarray(hsv.h, dtype=float) / 60.0
    s = np.asarray(hsv.s, dtype=float)
    v = np.asarray(hsv.v, dtype=float)
    i = np.floor(h6)
    f = h6 - i
    i = i.astype(int) % 6
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    choices_r = [v, q, p, p, t, v]
    choices_g = [t, v, v, q, p, p]
    choices_b = [p, p, t, v, v, q]
    r = np.choose(i, choices_r)
    g = np.choose(i, choices_g)
    b = np.choose(i, choices_b)
    return RgbImage(np.stack([r, g, b], axis=-1) * hsv.value_scale, hsv.value_scale)


def _check_bins(bins: int) -> int:
    bins = int(bins)
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    return bins


def equalize_unit(x: np.ndarray, bins: int = DEFAULT_BINS) -> np.ndarray:
    """CDF equalization of values in [0, 1] quantized to `bins` levels.

    Level q maps to ``(cdf[q] - cdf_min) / (1 - cdf_min)`` where ``cdf_min``
    is the cdf at the lowest occupied level.  A single-level input is
    returned unchanged.
    """
    bins = _check_bins(bins)
    x = np.asarray(x, dtype=float)
    levels = np.clip(np.rint(x * (bins - 1)), 0, bins - 1).astype(np.intp)
    counts = np.bincount(levels.ravel(), minlength=bins)
    cdf = np.cumsum(counts) / levels.size
    cdf_min = cdf[np.flatnonzero(counts)[0]]
    if cdf_min >= 1.0:
        return x.copy()
    lut = np.clip((cdf - cdf_min) / (1.0 - cdf_min), 0.0, 1.0)
    return lut[levels]


def equalize_v(hsv: HsvImage, bins: int = DEFAULT_BINS) -> HsvImage:
    """Equalize V; the H and S arrays are passed through as-is."""
    return HsvImage(hsv.h, hsv.s, equalize_unit(hsv.v, bins), hsv.value_scale)


def hist_eq_v(img: RgbImage, bins: int = DEFAULT_BINS) -> RgbImage:
    """Histogram-equalize the HSV value channel of a colour image."""
    out = hsv_to_rgb(equalize_v(rgb_to_hsv(img.clipped()), bins))
    return out.clipped()


def hist_eq_rgb_naive(img: RgbImage, bins: int = DEFAULT_BINS) -> RgbImage:
    """Equalize R, G and B independently.

    Diagnostic only: this shifts hues, which is why the value-channel
    variant exists.
    """
    unit = np.clip(img.data / img.value_scale, 0.0, 1.0)
    out = np.stack([equalize_unit(unit[..., c], bins) for c in range(3)], axis=-1)
    return RgbImage(out * img.value_scale, img.value_scale)
