"""Image containers, RGB <-> quaternion conversion and 8-bit file I/O."""
from __future__ import annotations

import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

log = logging.getLogger(__name__)

SCALAR_POLICIES = ("zero", "gray_mean")

_FORMATS = {
    ".png": "PNG",
    ".bmp": "BMP",
    ".tif": "TIFF",
    ".tiff": "TIFF",
    ".jpg": "JPEG",
    ".jpeg": "JPEG",
}
SAVE_FORMATS = ("PNG", "BMP", "TIFF", "JPEG")


class ImageIOError(Exception):
    """Base class for image load/save failures."""


class ImageReadError(ImageIOError):
    """The file could not be opened (missing, permissions, not a file)."""


class ImageDecodeError(ImageIOError):
    """The file was opened but its contents could not be decoded."""


class UnsupportedImageError(ImageIOError):
    """Decoded fine, but the bit depth or colour space is not handled."""


class ImageWriteError(ImageIOError):
    pass


@dataclass
class RgbImage:
    """Colour image as an ``(N, M, 3)`` float array of intensities."""

    data: np.ndarray
    value_scale: float = 255.0

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=float)
        if self.data.ndim != 3 or self.data.shape[2] != 3:
            raise ValueError(f"expected (N, M, 3) array, got shape {self.data.shape}")
        if self.data.shape[0] < 1 or self.data.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if not np.all(np.isfinite(self.data)):
            raise ValueError("intensities must be finite")

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[:2]

    @property
    def r(self) -> np.ndarray:
        return self.data[..., 0]

    @property
    def g(self) -> np.ndarray:
        return self.data[..., 1]

    @property
    def b(self) -> np.ndarray:
        return self.data[..., 2]

    def clipped(self) -> RgbImage:
        return RgbImage(np.clip(self.data, 0.0, self.value_scale), self.value_scale)

    def copy(self) -> RgbImage:
        return RgbImage(self.data.copy(), self.value_scale)


@dataclass
class QuaternionImage:
    """``(N, M, 4)`` grid of quaternions; RGB rides on the i, j, k parts."""

    pixels: np.ndarray
    value_scale: float = 255.0

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=float)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 4:
            raise ValueError(f"expected (N, M, 4) array, got shape {self.pixels.shape}")
        if self.pixels.shape[0] < 1 or self.pixels.shape[1] < 1:
            raise ValueError("image must be at least 1x1")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape[:2]

    @property
    def scalar(self) -> np.ndarray:
        return self.pixels[..., 0]

    def is_pure(self) -> bool:
        return bool(np.all(self.pixels[..., 0] == 0))


def rgb_to_quaternion(img: RgbImage, scalar_policy: str = "zero") -> QuaternionImage:
    """Encode each pixel as ``a + iR + jG + kB``.

    `scalar_policy` picks ``a``: ``"zero"`` gives pure quaternions,
    ``"gray_mean"`` uses ``(R + G + B) / 3``.
    """
    if scalar_policy not in SCALAR_POLICIES:
        raise ValueError(f"scalar_policy must be one of {SCALAR_POLICIES}")
    pixels = np.zeros(img.shape + (4,))
    pixels[..., 1:] = img.data
    if scalar_policy == "gray_mean":
        pixels[..., 0] = img.data.sum(axis=-1) / 3.0
    return QuaternionImage(pixels, img.value_scale)


def quaternion_to_rgb(qimg: QuaternionImage, clip: bool = False) -> RgbImage:
    """Take R, G, B from the i, j, k parts; the scalar part is dropped."""
    data = qimg.pixels[..., 1:].copy()
    if clip:
        np.clip(data, 0.0, qimg.value_scale, out=data)
    return RgbImage(data, qimg.value_scale)


def load_image(path) -> RgbImage:
    """Read an 8-bit RGB or grayscale file into float intensities."""
    path = Path(path)
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise ImageReadError(f"cannot open {path}: {exc.strerror or exc}") from exc
    with fh:
        try:
            im = Image.open(fh)
            im.load()
        except UnidentifiedImageError as exc:
            raise ImageDecodeError(f"{path}: not a recognised image file") from exc
        except (OSError, SyntaxError, ValueError) as exc:
            raise ImageDecodeError(f"{path}: decode failed ({exc})") from exc

        mode = im.mode
        if mode in ("RGBA", "LA", "PA"):
            log.warning("%s: dropping alpha channel", path)
            im = im.convert("RGB" if mode != "LA" else "L")
        elif mode == "P":
            im = im.convert("RGBA" if "transparency" in im.info else "RGB")
            if im.mode == "RGBA":
                log.warning("%s: dropping alpha channel", path)
                im = im.convert("RGB")
        elif mode == "1":
            im = im.convert("L")
        elif mode not in ("L", "RGB"):
            raise UnsupportedImageError(
                f"{path}: unsupported mode {mode!r} (need 8-bit RGB or grayscale)")

        arr = np.asarray(im, dtype=float)
    if arr.ndim == 2:
        arr = np.repeat(arr[:, :, None], 3, axis=2)
    return RgbImage(arr, 255.0)


def quantize(data: np.ndarray) -> np.ndarray:
    """Clip to [0, 255] then round half away from zero to uint8."""
    clipped = np.clip(np.asarray(data, dtype=float), 0.0, 255.0)
    # values are non-negative after the clip, so floor(x + .5) rounds half away from zero
    return np.floor(clipped + 0.5).astype(np.uint8)


def format_for_path(path, fmt: str | None = None) -> str:
    if fmt is not None:
        fmt = fmt.upper()
        if fmt == "JPG":
            fmt = "JPEG"
        if fmt == "TIF":
            fmt = "TIFF"
        if fmt not in SAVE_FORMATS:
            raise ValueError(f"unsupported output format {fmt!r}")
        return fmt
    ext = Path(path).suffix.lower()
    if ext not in _FORMATS:
        raise ValueError(f"cannot infer image format from extension {ext!r}")
    return _FORMATS[ext]


def save_image(img: RgbImage, path, fmt: str | None = None) -> None:
    """Write `img` as 8 bits per channel.

    The file is written to a temporary sibling and renamed into place, so a
    failed save never leaves a partial file at `path`.
    """
    path = Path(path)
    fmt = format_for_path(path, fmt)
    pil = Image.fromarray(quantize(img.data))
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(prefix=".qalpha-", suffix=path.suffix, dir=directory)
    except OSError as exc:
        raise ImageWriteError(f"cannot write to {directory}: {exc.strerror or exc}") from exc
    try:
        with os.fdopen(fd, "wb") as fh:
            pil.save(fh, format=fmt)
        os.replace(tmp, path)
    except OSError as exc:
        raise ImageWriteError(f"cannot write {path}: {exc}") from exc
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
