"""Two-sided 2-D quaternion DFT.

Forward transform::

    F(p, s) = sum_n W_j^{np} [ sum_m f(n, m) W_k^{ms} ]

with ``W_j^t = cos(2 pi t / N) - j sin(2 pi t / N)`` on the left and
``W_k^t = cos(2 pi t / M) - k sin(2 pi t / M)`` on the right.  The inverse
uses the conjugate kernels and carries the whole ``1 / NM`` factor.

``*_naive`` functions evaluate the sums directly from the quaternion
product.  The fast path splits the image into its four real component
planes, takes one complex 2-D FFT of each and rebuilds the quaternion
coefficients from the cos/sin sums those FFTs contain.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qimage import QuaternionImage
from .quat_core import exp_unit_array, qmul


@dataclass
class QSpectrum:
    """``(N, M, 4)`` grid of quaternion coefficients indexed by ``(p, s)``."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.ndim != 3 or self.coeffs.shape[2] != 4:
            raise ValueError(f"expected (N, M, 4) array, got shape {self.coeffs.shape}")

    @property
    def height(self) -> int:
        return self.coeffs.shape[0]

    @property
    def width(self) -> int:
        return self.coeffs.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[:2]


def _pixels(f) -> np.ndarray:
    if isinstance(f, QuaternionImage):
        return f.pixels
    if isinstance(f, QSpectrum):
        return f.coeffs
    arr = np.asarray(f, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 4:
        raise ValueError(f"expected (N, M, 4) array, got shape {arr.shape}")
    return arr


def _scale_of(f) -> float:
    return f.value_scale if isinstance(f, QuaternionImage) else 255.0


def _kernel(axis: str, size: int, sign: float) -> np.ndarray:
    """``(size, size, 4)`` table of ``W_axis^{sign * t1 * t2}``."""
    t = np.arange(size)
    # reduce the exponent mod size first; keeps the angle small and exact
    theta = 2.0 * np.pi * (np.outer(t, t) % size) / size
    return exp_unit_array(axis, sign * theta)


def _two_sided_naive(x: np.ndarray, sign: float) -> np.ndarray:
    n, m = x.shape[:2]
    wj = _kernel("j", n, sign)  # [p, n]
    wk = _kernel("k", m, sign)  # [m, s]
    # inner[n, s] = sum_m x[n, m] * wk[m, s]
    inner = qmul(x[:, :, None, :], wk[None, :, :, :]).sum(axis=1)
    # out[p, s] = sum_n wj[p, n] * inner[n, s]
    return qmul(wj[:, :, None, :], inner[None, :, :, :]).sum(axis=1)


def qdft_two_sided_naive(f) -> QSpectrum:
    """Direct evaluation of the forward transform, kernel x pixel x kernel."""
    return QSpectrum(_two_sided_naive(_pixels(f), +1.0))


def iqdft_two_sided_naive(F) -> QuaternionImage:
    x = _pixels(F)
    n, m = x.shape[:2]
    return QuaternionImage(_two_sided_naive(x, -1.0) / (n * m))


def _trig_sums(x: np.ndarray):
    """Per-plane sums of x against cos/sin products of both axes.

    Returns ``(CC, SS, SC, CS)``, each ``(N, M, 4)``; e.g.
    ``SC[p, s, r] = sum_{n,m} x[n, m, r] sin(2 pi np/N) cos(2 pi ms/M)``.
    """
    X = np.fft.fft2(x, axes=(0, 1))
    # X at (p, -s mod M)
    Xr = np.roll(X[:, ::-1, :], 1, axis=1)
    cc = 0.5 * (X.real + Xr.real)
    ss = 0.5 * (Xr.real - X.real)
    sc = -0.5 * (X.imag + Xr.imag)
    cs = -0.5 * (X.imag - Xr.imag)
    return cc, ss, sc, cs


def _combine(cc, ss, sc, cs) -> np.ndarray:
    """Assemble sum_n,m W_j f W_k from the trig sums of each component plane.

    W_j u W_k for u in {1, i, j, k} expands (using ij = k, jk = i, ki = j) to
        1: CC + i SS - j SC - k CS
        i: SS + i CC + j CS + k SC
        j: SC - i CS + j CC - k SS
        k: CS - i SC - j SS + k CC
    """
    a, b, c, d = 0, 1, 2, 3
    out = np.empty(cc.shape)
    out[..., 0] = cc[..., a] + ss[..., b] + sc[..., c] + cs[..., d]
    out[..., 1] = ss[..., a] + cc[..., b] - cs[..., c] - sc[..., d]
    out[..., 2] = -sc[..., a] + cs[..., b] + cc[..., c] - ss[..., d]
    out[..., 3] = -cs[..., a] + sc[..., b] - ss[..., c] + cc[..., d]
    return out


def qdft_two_sided_fast(f) -> QSpectrum:
    """Forward transform via four complex 2-D FFTs; any N, M."""
    cc, ss, sc, cs = _trig_sums(_pixels(f))
    return QSpectrum(_combine(cc, ss, sc, cs))


def iqdft_two_sided(F, value_scale: float = 255.0) -> QuaternionImage:
    """Inverse transform (fast path).

    The inverse kernels are the forward ones with the sine terms negated, so
    the same trig sums are reused with SC and CS flipped.
    """
    x = _pixels(F)
    n, m = x.shape[:2]
    cc, ss, sc, cs = _trig_sums(x)
    return QuaternionImage(_combine(cc, ss, -sc, -cs) / (n * m), value_scale)


qdft_two_sided = qdft_two_sided_fast
iqdft_two_sided_fast = iqdft_two_sided


def qdft_one_sided_naive(f, axis_unit: str = "j", side: str = "left") -> QSpectrum:
    """One-sided transform with a single-axis kernel.

    ``F(p, s) = sum_{n,m} exp(-u 2 pi np/N) exp(-u 2 pi ms/M) f(n, m)`` for
    ``side="left"``; ``side="right"`` puts both kernels after the pixel.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if axis_unit not in ("i", "j", "k"):
        raise ValueError("axis_unit must be one of 'i', 'j', 'k'")
    x = _pixels(f)
    n, m = x.shape[:2]
    kn = _kernel(axis_unit, n, 1.0)  # [p, n]
    km = _kernel(axis_unit, m, 1.0)  # [m, s] (symmetric)
    # kern[p, s, n, m] = kn[p, n] * km[s, m]
    kern = qmul(kn[:, None, :, None, :], km[None, :, None, :, :])
    xb = x[None, None, :, :, :]
    prod = qmul(kern, xb) if side == "left" else qmul(xb, kern)
    return QSpectrum(prod.sum(axis=(2, 3)))


def qdft_left_sided_naive(f, axis_unit: str = "j") -> QSpectrum:
    return qdft_one_sided_naive(f, axis_unit, "left")


def qdft_right_sided_naive(f, axis_unit: str = "j") -> QSpectrum:
    return qdft_one_sided_naive(f, axis_unit, "right")
