"""Command-line front end.

Exit codes: 0 success, 2 bad arguments, 3 I/O failure, 4 a numeric option
outside its allowed range.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .enhance_freq import AlphaParams, enhance_dft_channelwise, enhance_qdft
from .measures import BlockGrid, ceme_rgb, eme_rgb
from .pipeline import (AlphaGrid, ComparisonConfig, MeasureConfig, compare, format_table,
                       rows_to_csv, sweep_dft_channelwise, sweep_qdft, sweep_to_csv)
from .qimage import ImageIOError, format_for_path, load_image, save_image
from .spatial import DEFAULT_BINS, hist_eq_rgb_naive, hist_eq_v

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

log = logging.getLogger("qalpha")


class NumericError(ValueError):
    pass


class UsageError(Exception):
    pass


def parse_block(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        if len(parts) == 1:
            size = (int(parts[0]), int(parts[0]))
        elif len(parts) == 2:
            size = (int(parts[0]), int(parts[1]))
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"block must look like 8x8 or 8, got {text!r}") from None
    return size


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=".qalpha-", suffix=".tmp", dir=path.parent or Path("."))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _add_measure_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--block", type=parse_block, default=(8, 8), metavar="L1xL2",
                   help="block size for EME/CEME (default 8x8)")
    p.add_argument("--eps", type=float, default=1.0,
                   help="floor applied to block minima (default 1.0)")
    p.add_argument("--ceme-scalar", action="store_true",
                   help="include the residual scalar plane of the inverse QDFT in CEME")


def _add_alpha_args(p: argparse.ArgumentParser, default_alpha: float | None) -> None:
    p.add_argument("--alpha", type=float, default=default_alpha,
                   help="rooting exponent in (0, 1]; for dft-alpha it is the default "
                        "for every channel (enhance sweeps for the best alpha when no "
                        "exponent is given)")
    p.add_argument("--alpha-r", type=float, help="red exponent for dft-alpha")
    p.add_argument("--alpha-g", type=float, help="green exponent for dft-alpha")
    p.add_argument("--alpha-b", type=float, help="blue exponent for dft-alpha")
    p.add_argument("--preserve-dc", action="store_true",
                   help="leave the DC coefficient out of the rooting")


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha-min", type=float, default=0.80, help="sweep start (default 0.80)")
    p.add_argument("--alpha-max", type=float, default=1.00, help="sweep end (default 1.00)")
    p.add_argument("--alpha-step", type=float, default=0.01, help="sweep step (default 0.01)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qalpha",
        description="Alpha-rooting colour image enhancement with the two-sided "
                    "quaternion DFT, plus the channel-by-channel DFT baseline.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enhance", help="enhance one image and report CEME before/after")
    p.add_argument("input", help="input image (PNG, BMP, TIFF, JPEG)")
    p.add_argument("output", help="output image (PNG, BMP, TIFF, JPEG)")
    p.add_argument("--method", choices=("qdft-alpha", "dft-alpha"), default="qdft-alpha",
                   help="quaternion rooting or per-channel DFT rooting (default qdft-alpha)")
    _add_alpha_args(p, None)
    p.add_argument("--hist-eq", action="store_true",
                   help="histogram-equalize the HSV value channel after rooting")
    p.add_argument("--hist-eq-rgb", action="store_true",
                   help="diagnostic: equalize R, G, B separately after rooting (shifts hues)")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS, help="histogram bins (default 256)")
    p.add_argument("--scalar-policy", choices=("zero", "gray_mean"), default="zero",
                   help="scalar part of the quaternion pixels (default zero)")
    p.add_argument("--format", choices=("png", "bmp", "tiff", "jpeg"),
                   help="output format; inferred from the extension when omitted")
    _add_measure_args(p)

    p = sub.add_parser("sweep", help="measure curve over a grid of alphas")
    p.add_argument("input")
    p.add_argument("--method", choices=("qdft-alpha", "dft-alpha"), default="qdft-alpha",
                   help="qdft-alpha sweeps CEME; dft-alpha sweeps per-channel EME")
    _add_grid_args(p)
    p.add_argument("--preserve-dc", action="store_true",
                   help="leave the DC coefficient out of the rooting")
    p.add_argument("--csv-out", help="CSV path; the CSV goes to stdout when omitted")
    _add_measure_args(p)

    p = sub.add_parser("measure", help="CEME or per-channel EME of an image")
    p.add_argument("input")
    p.add_argument("--kind", choices=("ceme", "eme", "both"), default="both",
                   help="which measure to print (default both)")
    _add_measure_args(p)

    p = sub.add_parser("compare", help="five-row comparison of both methods with and without HE")
    p.add_argument("input")
    _add_grid_args(p)
    _add_alpha_args(p, None)
    p.epilog = ("Alphas are swept unless given: --alpha fixes the QDFT exponent and, "
                "with --alpha-r/-g/-b, the per-channel DFT exponents.")
    p.add_argument("--no-hist-eq", action="store_true",
                   help="skip histogram equalization in the spatial-transformation rows")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS, help="histogram bins (default 256)")
    p.add_argument("--csv-out", help="also write the table as CSV here")
    p.add_argument("--save-dir", help="write the four enhanced images into this directory")
    _add_measure_args(p)
    return parser


def _measure_config(args) -> MeasureConfig:
    if args.eps <= 0:
        raise NumericError(f"--eps must be positive, got {args.eps}")
    return MeasureConfig(block=args.block, eps=args.eps, scalar_plane=args.ceme_scalar)


def _grid(args) -> AlphaGrid:
    try:
        return AlphaGrid(args.alpha_min, args.alpha_max, args.alpha_step)
    except ValueError as exc:
        raise NumericError(str(exc)) from exc


def _alpha_params(args, default: float = 1.0) -> AlphaParams:
    alpha = default if args.alpha is None else args.alpha
    try:
        return AlphaParams(alpha, args.alpha_r, args.alpha_g, args.alpha_b,
                           preserve_dc=args.preserve_dc)
    except ValueError as exc:
        raise NumericError(str(exc)) from exc


def _check_bins(args) -> None:
    if args.bins < 2:
        raise NumericError(f"--bins must be at least 2, got {args.bins}")


def _check_blocks(img, measure: MeasureConfig) -> None:
    L1, L2 = measure.block
    if L1 < 1 or L2 < 1:
        raise NumericError(f"block size must be positive, got {L1}x{L2}")
    try:
        BlockGrid.for_shape(img.shape, measure.block)
    except ValueError as exc:
        raise NumericError(str(exc)) from exc


def _swept_params(img, args, measure: MeasureConfig) -> AlphaParams:
    if args.method == "qdft-alpha":
        best = sweep_qdft(img, AlphaGrid(), measure, preserve_dc=args.preserve_dc,
                          scalar_policy=args.scalar_policy)
        print(f"alpha (swept): {best.best_alpha:.4g}")
        return AlphaParams(best.best_alpha, preserve_dc=args.preserve_dc)
    sweeps = sweep_dft_channelwise(img, AlphaGrid(), measure, preserve_dc=args.preserve_dc)
    alphas = [s.best_alpha for s in sweeps]
    print("alpha (swept): " + " ".join(f"{c}={a:.4g}" for c, a in zip("RGB", alphas)))
    return AlphaParams(1.0, *alphas, preserve_dc=args.preserve_dc)


def cmd_enhance(args) -> int:
    measure = _measure_config(args)
    params = _alpha_params(args)
    _check_bins(args)
    if args.method == "qdft-alpha" and any(
            a is not None for a in (args.alpha_r, args.alpha_g, args.alpha_b)):
        raise NumericError("--alpha-r/-g/-b only apply to --method dft-alpha")
    try:
        fmt = format_for_path(args.output, args.format)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    img = load_image(args.input)
    _check_blocks(img, measure)
    if all(a is None for a in (args.alpha, args.alpha_r, args.alpha_g, args.alpha_b)):
        params = _swept_params(img, args, measure)
    scalar = None
    if args.method == "qdft-alpha":
        out = enhance_qdft(img, params, scalar_policy=args.scalar_policy)
        result, scalar = out.rgb, out.scalar
    else:
        result = enhance_dft_channelwise(img, params)
    if args.hist_eq:
        result = hist_eq_v(result, args.bins)
    if args.hist_eq_rgb:
        result = hist_eq_rgb_naive(result, args.bins)

    save_image(result, args.output, fmt)
    print(f"CEME original: {measure.ceme(img.data):.4f}")
    print(f"CEME enhanced: {measure.ceme(result.data, scalar):.4f}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    measure = _measure_config(args)
    grid = _grid(args)
    img = load_image(args.input)
    _check_blocks(img, measure)
    if args.method == "qdft-alpha":
        result = sweep_qdft(img, grid, measure, preserve_dc=args.preserve_dc)
        summary = f"best alpha: {result.best_alpha:.4g} (CEME {result.best_value:.4f})"
    else:
        result = sweep_dft_channelwise(img, grid, measure, preserve_dc=args.preserve_dc)
        summary = "best alpha: " + " ".join(
            f"{c}={s.best_alpha:.4g} (EME {s.best_value:.4f})" for c, s in zip("RGB", result))
    text = sweep_to_csv(result)
    if args.csv_out:
        atomic_write_text(args.csv_out, text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_measure(args) -> int:
    measure = _measure_config(args)
    img = load_image(args.input)
    _check_blocks(img, measure)
    if args.kind in ("ceme", "both"):
        print(f"CEME: {ceme_rgb(img.data, None, measure.block, measure.eps).value:.4f}")
    if args.kind in ("eme", "both"):
        for c, rep in zip("RGB", eme_rgb(img.data, measure.block, measure.eps)):
            print(f"EME {c}: {rep.value:.4f}")
    return EXIT_OK


def cmd_compare(args) -> int:
    measure = _measure_config(args)
    grid = _grid(args)
    _check_bins(args)
    params = _alpha_params(args)
    dft_fixed = None
    if any(a is not None for a in (args.alpha_r, args.alpha_g, args.alpha_b, args.alpha)):
        dft_fixed = params.channel_alphas
    config = ComparisonConfig(
        grid=grid, measure=measure, hist_eq=not args.no_hist_eq, bins=args.bins,
        preserve_dc=args.preserve_dc, qdft_alpha=args.alpha, dft_alphas=dft_fixed)
    img = load_image(args.input)
    _check_blocks(img, measure)
    result = compare(img, config)

    if args.save_dir:
        out_dir = Path(args.save_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ImageIOError(f"cannot create {out_dir}: {exc}") from exc
        for name, image in result.images.items():
            save_image(image, out_dir / f"{Path(args.input).stem}_{name}.png")
    if args.csv_out:
        atomic_write_text(args.csv_out, rows_to_csv(result.rows))
    sys.stdout.write(format_table(result.rows))
    return EXIT_OK


COMMANDS = {
    "enhance": cmd_enhance,
    "sweep": cmd_sweep,
    "measure": cmd_measure,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qalpha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"qalpha: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ImageIOError, OSError) as exc:
        print(f"qalpha: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
