"""Block contrast measures: EME for one channel, CEME for colour planes.

Both split the image into ``k1 x k2`` blocks of ``L1 x L2`` pixels (trailing
rows and columns that do not fill a block are ignored) and average
``20 log10(max / min)`` over the blocks.  CEME takes the max and min jointly
over every plane of the colour image.

A floor `eps` replaces block minima below it so that dark blocks give a
finite value; blocks whose maximum is below `eps` contribute zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_BLOCK = (8, 8)
DEFAULT_EPS = 1.0
# a scalar plane with max |value| below this is treated as identically zero
ZERO_SCALAR_TOL = 1e-6


@dataclass(frozen=True)
class BlockGrid:
    L1: int
    L2: int
    k1: int
    k2: int

    @classmethod
    def for_shape(cls, shape: tuple[int, int], block: tuple[int, int] = DEFAULT_BLOCK) -> BlockGrid:
        L1, L2 = (int(v) for v in block)
        if L1 < 1 or L2 < 1:
            raise ValueError(f"block size must be positive, got {L1}x{L2}")
        N, M = shape
        k1, k2 = N // L1, M // L2
        if k1 < 1 or k2 < 1:
            raise ValueError(f"image {N}x{M} is smaller than one {L1}x{L2} block")
        return cls(L1, L2, k1, k2)


@dataclass(frozen=True)
class MeasureReport:
    kind: str  # "EME" or "CEME"
    value: float
    grid: BlockGrid
    epsilon_used: float


def _resolve_grid(shape, grid) -> BlockGrid:
    if grid is None:
        return BlockGrid.for_shape(shape)
    if isinstance(grid, BlockGrid):
        expected = BlockGrid.for_shape(shape, (grid.L1, grid.L2))
        if expected != grid:
            raise ValueError(f"grid {grid} does not match image shape {shape}")
        return grid
    return BlockGrid.for_shape(shape, grid)


def _block_extrema(stack: np.ndarray, grid: BlockGrid):
    """Max and min per block of a ``(P, N, M)`` stack, jointly over planes."""
    P = stack.shape[0]
    crop = stack[:, :grid.k1 * grid.L1, :grid.k2 * grid.L2]
    blocks = crop.reshape(P, grid.k1, grid.L1, grid.k2, grid.L2)
    return blocks.max(axis=(0, 2, 4)), blocks.min(axis=(0, 2, 4))


def _mean_log_ratio(bmax: np.ndarray, bmin: np.ndarray, eps: float) -> float:
    live = bmax >= eps
    ratios = (bmax[live] / np.maximum(bmin[live], eps)).tolist()
    # libm log10 rather than numpy's SIMD one, which can differ by an ulp;
    # fsum is exactly rounded, so block order does not matter either
    return math.fsum(20.0 * math.log10(r) for r in ratios) / bmax.size


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return eps


def eme(channel, grid=None, eps: float = DEFAULT_EPS) -> MeasureReport:
    """EME of a single ``(N, M)`` channel.

    `grid` may be a :class:`BlockGrid`, an ``(L1, L2)`` pair, or None for
    8x8 blocks.
    """
    channel = np.asarray(channel, dtype=float)
    if channel.ndim != 2:
        raise ValueError("eme expects a 2-D channel")
    eps = _check_eps(eps)
    grid = _resolve_grid(channel.shape, grid)
    bmax, bmin = _block_extrema(channel[None], grid)
    return MeasureReport("EME", _mean_log_ratio(bmax, bmin, eps), grid, eps)


def ceme(planes: Sequence[np.ndarray], grid=None, eps: float = DEFAULT_EPS,
         include_zero_scalar: bool = False) -> MeasureReport:
    """CEME over the planes of a colour image.

    With four planes the first is taken as the quaternion scalar part
    ``(f_e, R, G, B)``.  When that plane is zero everywhere (up to
    ``ZERO_SCALAR_TOL``) it is left out unless `include_zero_scalar` is set,
    otherwise every block of a pure-quaternion image would have a zero min.
    Any other number of planes is used as given.
    """
    arrs = [np.asarray(p, dtype=float) for p in planes]
    if not arrs:
        raise ValueError("ceme needs at least one plane")
    shape = arrs[0].shape
    if len(shape) != 2 or any(a.shape != shape for a in arrs):
        raise ValueError(f"planes must be 2-D and equal in size, got {[a.shape for a in arrs]}")
    eps = _check_eps(eps)
    grid = _resolve_grid(shape, grid)
    if len(arrs) == 4 and not include_zero_scalar and np.max(np.abs(arrs[0])) <= ZERO_SCALAR_TOL:
        arrs = arrs[1:]
    bmax, bmin = _block_extrema(np.stack(arrs), grid)
    return MeasureReport("CEME", _mean_log_ratio(bmax, bmin, eps), grid, eps)


def ceme_rgb(rgb: np.ndarray, scalar: np.ndarray | None = None, grid=None,
             eps: float = DEFAULT_EPS, include_zero_scalar: bool = False) -> MeasureReport:
    """CEME of an ``(N, M, 3)`` array, optionally with its scalar plane."""
    rgb = np.asarray(rgb, dtype=float)
    planes = [rgb[..., 0], rgb[..., 1], rgb[..., 2]]
    if scalar is None:
        scalar = np.zeros(rgb.shape[:2])
    return ceme([scalar] + planes, grid, eps, include_zero_scalar)


def eme_rgb(rgb: np.ndarray, grid=None, eps: float = DEFAULT_EPS) -> tuple[MeasureReport, ...]:
    rgb = np.asarray(rgb, dtype=float)
    return tuple(eme(rgb[..., c], grid, eps) for c in range(3))
