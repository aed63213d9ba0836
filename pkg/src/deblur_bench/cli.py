"""Command-line front end: pipeline steps as subcommands plus the scenario runner.

Exit codes: 0 success, 1 usage error, 2 runtime error. The default output
directory of `run-paper` can be overridden with the DEBLUR_BENCH_OUTDIR
environment variable; everything else is flag-driven.
"""
from __future__ import annotations

import argparse
import os
import sys

from .core import image_stats, load_image, rmse, save_image
from .deconv import regularized, richardson_lucy, wiener
from .degrade import BOUNDARY_MODES, NoiseSpec, add_salt_pepper, convolve
from .denoise import adaptive_median
from .psf import gaussian_psf, kernel_to_text, laplacian_operator, load_kernel, motion_psf, save_kernel
from .report import ScenarioConfig, run_paper

OUTDIR_ENV = "DEBLUR_BENCH_OUTDIR"


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits with code 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric pair {text!r}") from None


def _odd_int(text: str) -> int:
    value = int(text)
    if value < 3 or value % 2 == 0:
        raise argparse.ArgumentTypeError(f"expected an odd integer >= 3, got {text}")
    return value


def _density(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"density must be in [0, 1], got {text}")
    return value


def _add_psf_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--motion", type=_pair, metavar="LENGTH,ANGLE",
                       help="linear motion PSF: length in px, angle in degrees CCW")
    group.add_argument("--gaussian", type=_pair, metavar="SIZE,SIGMA",
                       help="Gaussian PSF: odd size and standard deviation")
    group.add_argument("--psf", metavar="FILE",
                       help="load a PSF from a kernel text file")


def _resolve_kernel(args):
    if args.psf is not None:
        return load_kernel(args.psf)
    if args.motion is not None:
        return motion_psf(*args.motion)
    size, sigma = args.gaussian
    if size != int(size):
        raise ValueError(f"gaussian size must be an integer, got {size}")
    return gaussian_psf(int(size), sigma)


def _cmd_psf(args) -> int:
    if args.laplacian is not None:
        rows, cols = args.laplacian
        if rows != int(rows) or cols != int(cols):
            raise ValueError("laplacian dimensions must be integers")
        kernel = laplacian_operator(int(rows), int(cols))
    else:
        kernel = _resolve_kernel(args)
    if args.out:
        save_kernel(kernel, args.out)
    if args.print or not args.out:
        sys.stdout.write(kernel_to_text(kernel))
    return 0


def _cmd_blur(args) -> int:
    img = load_image(args.input)
    save_image(convolve(img, _resolve_kernel(args), args.boundary), args.output)
    return 0


def _cmd_noise(args) -> int:
    img = load_image(args.input)
    spec = NoiseSpec(density=args.density, seed=args.seed)
    save_image(add_salt_pepper(img, spec), args.output)
    return 0


def _cmd_denoise(args) -> int:
    img = load_image(args.input)
    save_image(adaptive_median(img, args.max_window), args.output)
    return 0


def _cmd_deblur(args) -> int:
    img = load_image(args.input)
    kernel = _resolve_kernel(args)
    if args.method == "wiener":
        result = wiener(img, kernel, nsr=args.nsr)
    elif args.method == "rl":
        result = richardson_lucy(img, kernel, iterations=args.iterations)
    else:
        if (args.lam is None) == (args.noise_power is None):
            raise ValueError("reg needs exactly one of --lambda or --noise-power")
        if args.lam is not None:
            result = regularized(img, kernel, lam=args.lam).image
        else:
            result = regularized(img, kernel, noise_power=args.noise_power,
                                 lambda_range=args.lambda_range).image
    save_image(result, args.output)
    return 0


def _cmd_stats(args) -> int:
    stats = image_stats(load_image(args.input))
    print(f"mean {stats.mean:.6g}")
    print(f"std {stats.std:.6g}")
    print(f"snr {stats.snr:.6g}")
    return 0


def _cmd_compare(args) -> int:
    print(f"rmse {rmse(load_image(args.a), load_image(args.b)):.6g}")
    return 0


def _cmd_run_paper(args) -> int:
    blur_types = ("motion", "gaussian") if args.blur == "both" else (args.blur,)
    outdir = args.out_dir or os.environ.get(OUTDIR_ENV) or "deblur-bench-out"
    size, sigma = args.gaussian
    if size != int(size):
        raise ValueError(f"gaussian size must be an integer, got {size}")
    config = ScenarioConfig(
        input_path=args.input,
        output_dir=outdir,
        blur_types=blur_types,
        motion_length=args.motion[0],
        motion_angle=args.motion[1],
        gaussian_size=int(size),
        gaussian_sigma=sigma,
        boundary=args.boundary,
        density=args.density,
        seed=args.seed,
        max_window=args.max_window,
        nsr=args.nsr,
        rl_iterations=args.rl_iterations,
        noise_power=args.noise_power,
        lambda_range=args.lambda_range,
        figures=not args.no_figures,
    )
    report = run_paper(config)
    print(f"wrote {len(report.records)} records to {outdir}/report.csv")
    failed = [r for r in report.records if r.error]
    if failed:
        print(f"{len(failed)} method cell(s) failed; see report.txt", file=sys.stderr)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="deblur-bench",
                     description="grayscale deblurring benchmark pipeline")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("psf", help="construct a PSF and print or save it")
    _add_psf_options_optional(p)
    p.add_argument("--laplacian", type=_pair, metavar="ROWS,COLS",
                   help="zero-embedded Laplacian operator grid")
    p.add_argument("--out", help="write the kernel to this text file")
    p.add_argument("--print", action="store_true", help="print the kernel text grid")
    p.set_defaults(func=_cmd_psf)

    p = sub.add_parser("blur", help="convolve an image with a PSF")
    _add_psf_options(p)
    p.add_argument("--boundary", choices=sorted(BOUNDARY_MODES), default="circular")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_blur)

    p = sub.add_parser("noise", help="add salt-and-pepper noise")
    p.add_argument("--density", type=_density, default=0.07)
    p.add_argument("--seed", type=int, default=2022)
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_noise)

    p = sub.add_parser("denoise", help="adaptive median filter")
    p.add_argument("--max-window", type=_odd_int, default=5)
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_denoise)

    p = sub.add_parser("deblur", help="non-blind deconvolution")
    p.add_argument("--method", choices=("wiener", "rl", "reg"), required=True)
    _add_psf_options(p)
    p.add_argument("--nsr", type=float, default=0.0,
                   help="wiener noise-to-signal power ratio")
    p.add_argument("--iterations", type=int, default=10,
                   help="rl iteration count")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="reg fixed Lagrange multiplier")
    p.add_argument("--noise-power", type=float, default=None,
                   help="reg target residual power (solve mode)")
    p.add_argument("--lambda-range", type=_pair, default=(1e-9, 1e2),
                   metavar="LO,HI", help="reg solve-mode search range")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_deblur)

    p = sub.add_parser("stats", help="print mean, std, and snr of an image")
    p.add_argument("input")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("compare", help="print rmse between two images")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("run-paper", help="run the full two-scenario benchmark")
    p.add_argument("--input", default=None,
                   help="input image (default: packaged stand-in)")
    p.add_argument("--blur", choices=("motion", "gaussian", "both"), default="both")
    p.add_argument("--motion", type=_pair, default=(15.0, 11.0), metavar="LENGTH,ANGLE")
    p.add_argument("--gaussian", type=_pair, default=(5.0, 7.0), metavar="SIZE,SIGMA")
    p.add_argument("--boundary", choices=sorted(BOUNDARY_MODES), default="circular")
    p.add_argument("--density", type=_density, default=0.07)
    p.add_argument("--seed", type=int, default=2022)
    p.add_argument("--max-window", type=_odd_int, default=5)
    p.add_argument("--nsr", type=float, default=None,
                   help="override the estimated wiener nsr")
    p.add_argument("--rl-iterations", type=int, default=30,
                   help="rl sweep upper bound")
    p.add_argument("--noise-power", type=float, default=None,
                   help="override the estimated reg target residual power")
    p.add_argument("--lambda-range", type=_pair, default=(1e-9, 1e2), metavar="LO,HI")
    p.add_argument("--out-dir", default=None,
                   help=f"output directory (default: ${OUTDIR_ENV} or deblur-bench-out)")
    p.add_argument("--no-figures", action="store_true",
                   help="skip rendering PNG figures")
    p.set_defaults(func=_cmd_run_paper)
    return parser


def _add_psf_options_optional(parser: argparse.ArgumentParser) -> None:
    # like _add_psf_options but not required (psf subcommand also offers --laplacian)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--motion", type=_pair, metavar="LENGTH,ANGLE")
    group.add_argument("--gaussian", type=_pair, metavar="SIZE,SIGMA")
    group.add_argument("--psf", metavar="FILE")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "psf":
        chosen = [opt for opt in (args.motion, args.gaussian, args.psf, args.laplacian)
                  if opt is not None]
        if len(chosen) != 1:
            parser.error("psf requires exactly one of --motion, --gaussian, --psf, --laplacian")
    try:
        return args.func(args)
    except Exception as exc:
        print(f"deblur-bench: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
