"""Command-line interface.

Subcommands: gen-assets, enhance, classify, table, heatmap. Defaults mirror
the experiment design (single-qubit mode, 256 shots, seed 1, one pi/3
recursion) so a bare invocation reproduces the standard setup. Exit codes:
0 success, 1 domain/validation error, 2 I/O or file-format error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import analysis, pipeline, refassets
from .errors import DomainError, FormatError
from .fixedpoint import FixedPointParams
from .imaging import GrayImage, load_pgm, match_percent, save_pgm
from .refassets import CHARSET

_SCORE_HEADER = ["character", "match_percent", "mean", "mean_deviation"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; route them through the domain path
    def error(self, message):
        raise DomainError(message)


def _add_enhance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=["single", "block"], default="single")
    readout = p.add_mutually_exclusive_group()
    readout.add_argument("--shots", type=int, default=256)
    readout.add_argument("--exact", action="store_true")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--phi", type=float, default=math.pi / 3)
    p.add_argument("--psi", type=float, default=math.pi / 3)


def _config(args, scale_n: int) -> pipeline.EnhanceConfig:
    return pipeline.EnhanceConfig(
        mode={"single": "single_qubit", "block": "block"}[args.mode],
        scale_n=scale_n,
        shots=0 if args.exact else args.shots,
        seed=args.seed,
        params=FixedPointParams(phi=args.phi, psi=args.psi, recursions=args.m),
    )


def _read_image(path: str) -> GrayImage:
    return load_pgm(Path(path).read_bytes())


def _read_charset_dir(dirpath: str, kind: str) -> dict[str, GrayImage]:
    images = {}
    for ch in CHARSET:
        p = Path(dirpath) / f"{ch}.pgm"
        if not p.is_file():
            raise DomainError(f"missing {kind} image for character {ch!r}: {p}")
        images[ch] = load_pgm(p.read_bytes())
    return images


def _infer_scale(low: GrayImage, ref: GrayImage) -> int:
    if ref.width % low.width or ref.height % low.height:
        raise DomainError(
            f"reference {ref.width}x{ref.height} is not an integer multiple "
            f"of low-resolution {low.width}x{low.height}"
        )
    nx, ny = ref.width // low.width, ref.height // low.height
    if nx != ny or nx < 2:
        raise DomainError(f"incompatible dimensions: scale factors {nx}x{ny}")
    return nx


def _cmd_gen_assets(args) -> None:
    glyphs = refassets.glyph_set()
    refs = refassets.gen_reference(glyphs, args.upscale)
    lows = refassets.gen_lowres(refs, args.n)
    refassets.write_asset_dir(args.out, refs, lows)


def _cmd_enhance(args) -> None:
    low = _read_image(args.input)
    ref = _read_image(args.ref)
    cfg = _config(args, _infer_scale(low, ref))
    out = pipeline.enhance(low, ref, cfg)
    Path(args.out).write_bytes(save_pgm(out, "P5"))
    print(f"match_percent={match_percent(out, ref):.10g}")


def _cmd_classify(args) -> None:
    low = _read_image(args.input)
    refs = _read_charset_dir(args.refdir, "reference")
    cfg = _config(args, _infer_scale(low, refs[CHARSET[0]]))
    best, table = pipeline.classify(low, refs, cfg)
    if args.csv:
        rows = [(ch, mp, table.mean, table.mean_deviation) for ch, mp in table.rows]
        Path(args.csv).write_bytes(analysis.emit_csv(_SCORE_HEADER, rows))
    print(f"best={best}")


def _cmd_table(args) -> None:
    lows = _read_charset_dir(args.lowdir, "low-resolution")
    refs = _read_charset_dir(args.refdir, "reference")
    cfg = _config(args, _infer_scale(lows[CHARSET[0]], refs[CHARSET[0]]))
    result = pipeline.score_table_batch(lows, refs, cfg)
    rows = list(result.rows)
    rows.append(("Mean", result.grand_own, result.grand_mean, result.grand_mean_deviation))
    Path(args.out).write_bytes(analysis.emit_csv(_SCORE_HEADER, rows))


def _cmd_heatmap(args) -> None:
    algorithm = {"grover": "grover", "fixedpoint": "fixed_point"}[args.algorithm]
    params = FixedPointParams(phi=args.phi, psi=args.psi, recursions=args.m)
    grid = analysis.heatmap(algorithm, args.resolution, params)
    Path(args.out).write_bytes(analysis.heatmap_csv(grid))


def _build_parser() -> _Parser:
    parser = _Parser(prog="qcharid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-assets", help="write the reference/low-resolution asset tree")
    p.add_argument("--out", required=True)
    p.add_argument("--upscale", type=int, default=4)
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=_cmd_gen_assets)

    p = sub.add_parser("enhance", help="enhance one image toward one reference")
    p.add_argument("--input", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--out", required=True)
    _add_enhance_flags(p)
    p.set_defaults(func=_cmd_enhance)

    p = sub.add_parser("classify", help="identify the character in a low-resolution image")
    p.add_argument("--input", required=True)
    p.add_argument("--refdir", required=True)
    p.add_argument("--csv")
    _add_enhance_flags(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("table", help="score every character against every reference")
    p.add_argument("--lowdir", required=True)
    p.add_argument("--refdir", required=True)
    p.add_argument("--out", required=True)
    _add_enhance_flags(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("heatmap", help="emit a probability-mismatch grid as CSV")
    p.add_argument("--algorithm", choices=["grover", "fixedpoint"], required=True)
    p.add_argument("--resolution", type=int, default=101)
    p.add_argument("--out", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--phi", type=float, default=math.pi / 3)
    p.add_argument("--psi", type=float, default=math.pi / 3)
    p.set_defaults(func=_cmd_heatmap)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        args.func(args)
        return 0
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
