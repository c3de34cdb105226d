"""Alpha sweeps and the five-row method comparison."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .enhance_freq import (AlphaParams, alpha_root_complex, check_alpha, enhance_dft_channelwise,
                           enhance_qdft)
from .measures import DEFAULT_BLOCK, DEFAULT_EPS, ceme_rgb, eme, eme_rgb
from .qdft import qdft_two_sided_fast
from .qimage import RgbImage, rgb_to_quaternion
from .spatial import DEFAULT_BINS, hist_eq_v


@dataclass(frozen=True)
class AlphaGrid:
    alpha_min: float = 0.80
    alpha_max: float = 1.00
    step: float = 0.01

    def __post_init__(self):
        check_alpha(self.alpha_min, "alpha_min")
        check_alpha(self.alpha_max, "alpha_max")
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.alpha_max < self.alpha_min:
            raise ValueError("alpha_max is below alpha_min: empty grid")

    def values(self) -> list[float]:
        n = int(math.floor((self.alpha_max - self.alpha_min) / self.step + 1e-9)) + 1
        # rounding keeps grid points like 0.94 exact in reports and CSV
        return [round(self.alpha_min + i * self.step, 10) for i in range(n)]


@dataclass(frozen=True)
class MeasureConfig:
    """Block geometry and eps for EME/CEME.

    `scalar_plane` adds the residual scalar part of the inverse QDFT to the
    planes CEME looks at for quaternion-enhanced images.  It is off by
    default: that residue is a small signal oscillating around zero, so it
    pins every block minimum to `eps` and the measure stops tracking the
    colour content.
    """

    block: tuple[int, int] = DEFAULT_BLOCK
    eps: float = DEFAULT_EPS
    scalar_plane: bool = False
    include_zero_scalar: bool = False

    def ceme(self, rgb: np.ndarray, scalar: np.ndarray | None = None) -> float:
        if not self.scalar_plane:
            scalar = None
        return ceme_rgb(rgb, scalar, self.block, self.eps, self.include_zero_scalar).value

    def eme(self, channel: np.ndarray) -> float:
        return eme(channel, self.block, self.eps).value


@dataclass
class SweepResult:
    alphas: list[float]
    values: list[float]
    best_alpha: float
    best_value: float


def best_of(alphas, values) -> SweepResult:
    """Argmax over a curve; ties go to the larger alpha."""
    alphas = [float(a) for a in alphas]
    values = [float(v) for v in values]
    if not alphas or len(alphas) != len(values):
        raise ValueError("empty or mismatched sweep curve")
    top = max(values)
    best = max(a for a, v in zip(alphas, values) if v == top)
    return SweepResult(alphas, values, best, top)


def sweep_qdft(img: RgbImage, grid: AlphaGrid | None = None,
               measure: MeasureConfig | None = None, *,
               preserve_dc: bool = False, scalar_policy: str = "zero") -> SweepResult:
    """CEME of the quaternion-enhanced image at every grid alpha."""
    grid = grid or AlphaGrid()
    measure = measure or MeasureConfig()
    alphas = grid.values()
    spectrum = qdft_two_sided_fast(rgb_to_quaternion(img, scalar_policy))
    values = []
    for a in alphas:
        out = enhance_qdft(img, AlphaParams(a, preserve_dc=preserve_dc), spectrum=spectrum)
        values.append(measure.ceme(out.rgb.data, out.scalar))
    return best_of(alphas, values)


def sweep_dft_channelwise(img: RgbImage, grid: AlphaGrid | None = None,
                          measure: MeasureConfig | None = None, *,
                          preserve_dc: bool = False) -> tuple[SweepResult, SweepResult, SweepResult]:
    """Independent EME sweeps of the R, G and B channels."""
    grid = grid or AlphaGrid()
    measure = measure or MeasureConfig()
    alphas = grid.values()
    results = []
    for c in range(3):
        X = np.fft.fft2(img.data[..., c])
        values = []
        for a in alphas:
            chan = np.fft.ifft2(alpha_root_complex(X, a, preserve_dc)).real
            values.append(measure.eme(np.clip(chan, 0.0, img.value_scale)))
        results.append(best_of(alphas, values))
    return tuple(results)


@dataclass
class ComparisonRow:
    label: str
    ceme: float
    alphas: tuple[float, ...] = ()
    emes: tuple[float, ...] = ()


@dataclass
class ComparisonConfig:
    grid: AlphaGrid = field(default_factory=AlphaGrid)
    measure: MeasureConfig = field(default_factory=MeasureConfig)
    hist_eq: bool = True
    bins: int = DEFAULT_BINS
    preserve_dc: bool = False
    # fixed exponents skip the corresponding sweep
    qdft_alpha: float | None = None
    dft_alphas: tuple[float, float, float] | None = None


@dataclass
class Comparison:
    rows: list[ComparisonRow]
    images: dict[str, RgbImage]
    qdft_sweep: SweepResult | None = None
    dft_sweeps: tuple[SweepResult, ...] | None = None


LABELS = (
    "Original Image",
    "2-D QDFT Alpha-Rooting",
    "2-D QDFT Alpha-Rooting With Spatial Transformation",
    "2-D DFT Alpha-Rooting",
    "2-D DFT Alpha-Rooting with Spatial Transformation",
)


def compare(img: RgbImage, config: ComparisonConfig | None = None) -> Comparison:
    """Run both enhancement methods, with and without HE, and measure them.

    Rooting always precedes equalization.  With `hist_eq` off the two
    "spatial transformation" rows repeat their frequency-only images.
    """
    config = config or ComparisonConfig()
    m = config.measure

    qsweep = None
    if config.qdft_alpha is None:
        qsweep = sweep_qdft(img, config.grid, m, preserve_dc=config.preserve_dc)
        q_alpha = qsweep.best_alpha
    else:
        q_alpha = check_alpha(config.qdft_alpha)

    dsweeps = None
    if config.dft_alphas is None:
        dsweeps = sweep_dft_channelwise(img, config.grid, m, preserve_dc=config.preserve_dc)
        d_alphas = tuple(s.best_alpha for s in dsweeps)
    else:
        d_alphas = tuple(check_alpha(a) for a in config.dft_alphas)

    q = enhance_qdft(img, AlphaParams(q_alpha, preserve_dc=config.preserve_dc))
    d = enhance_dft_channelwise(img, AlphaParams(1.0, *d_alphas, preserve_dc=config.preserve_dc))
    if config.hist_eq:
        q_he = hist_eq_v(q.rgb, config.bins)
        d_he = hist_eq_v(d, config.bins)
    else:
        q_he, d_he = q.rgb, d

    def emes(data):
        return tuple(r.value for r in eme_rgb(data, m.block, m.eps))

    rows = [
        ComparisonRow(LABELS[0], m.ceme(img.data), (), emes(img.data)),
        ComparisonRow(LABELS[1], m.ceme(q.rgb.data, q.scalar), (q_alpha,)),
        # HE acts on the colour planes; the scalar residue is carried unchanged
        ComparisonRow(LABELS[2], m.ceme(q_he.data, q.scalar), (q_alpha,)),
        ComparisonRow(LABELS[3], m.ceme(d.data), d_alphas, emes(d.data)),
        ComparisonRow(LABELS[4], m.ceme(d_he.data), d_alphas),
    ]
    images = {"qdft": q.rgb, "qdft_he": q_he, "dft": d, "dft_he": d_he}
    return Comparison(rows, images, qsweep, dsweeps)


def run_comparison(img: RgbImage, config: ComparisonConfig | None = None) -> list[ComparisonRow]:
    return compare(img, config).rows


# -- reporting ---------------------------------------------------------------

def _fmt_alphas(alphas) -> str:
    if not alphas:
        return "-"
    if len(alphas) == 1:
        return f"{alphas[0]:.2f}"
    return " ".join(f"{c}:{a:.2f}" for c, a in zip("RGB", alphas))


def _fmt_emes(emes) -> str:
    if not emes:
        return "-"
    return " ".join(f"{c}:{e:.4f}" for c, e in zip("RGB", emes))


def format_table(rows: list[ComparisonRow]) -> str:
    """Aligned plain-text table: method, CEME, alpha(s), EME(s)."""
    cells = [("Method", "CEME", "Alpha", "EME")]
    cells += [(r.label, f"{r.ceme:.4f}", _fmt_alphas(r.alphas), _fmt_emes(r.emes)) for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def rows_to_csv(rows: list[ComparisonRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["method", "ceme", "alpha_r", "alpha_g", "alpha_b", "eme_r", "eme_g", "eme_b"])
    for r in rows:
        alphas = list(r.alphas) * 3 if len(r.alphas) == 1 else list(r.alphas)
        alphas = [repr(a) for a in alphas] or ["", "", ""]
        emes = [repr(e) for e in r.emes] or ["", "", ""]
        w.writerow([r.label, repr(r.ceme)] + alphas + emes)
    return buf.getvalue()


def sweep_to_csv(result: SweepResult | tuple[SweepResult, ...]) -> str:
    """``alpha,value`` for one curve, ``alpha,eme_r,eme_g,eme_b`` for three."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(result, SweepResult):
        w.writerow(["alpha", "value"])
        for a, v in zip(result.alphas, result.values):
            w.writerow([repr(a), repr(v)])
    else:
        w.writerow(["alpha", "eme_r", "eme_g", "eme_b"])
        for i, a in enumerate(result[0].alphas):
            w.writerow([repr(a)] + [repr(s.values[i]) for s in result])
    return buf.getvalue()


def read_sweep_csv(text: str) -> SweepResult | tuple[SweepResult, ...]:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    alphas = [float(r[0]) for r in body]
    curves = [[float(r[i]) for r in body] for i in range(1, len(header))]
    if len(curves) == 1:
        return best_of(alphas, curves[0])
    return tuple(best_of(alphas, c) for c in curves)
