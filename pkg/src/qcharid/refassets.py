"""Deterministic reference and low-resolution test assets for 0-9, A-Z.

Glyphs are an embedded 8x8 dot-matrix face, so asset generation has no font
stack dependence and regenerates byte-for-byte. References are nearest
neighbor upscales of the glyphs with a one-pixel half-tone border where ink
meets background; without that border the default 32/16 geometry pools
losslessly and enhancement would have nothing to recover.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import DomainError
from .imaging import GrayImage, downsample_avg, match_percent, save_pgm, upscale_repeat

CHARSET = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"

# 8x8 bitmaps, '#' = ink. Column 7 and row 7 stay blank for spacing.
_GLYPH_ART = {
    "0": ("..###...",
          ".#...#..",
          "#...##..",
          "#..#.#..",
          "#.#..#..",
          "##...#..",
          ".####...",
          "........"),
    "1": ("...#....",
          "..##....",
          ".#.#....",
          "...#....",
          "...#....",
          "...#....",
          ".#####..",
          "........"),
    "2": (".####...",
          "#....#..",
          ".....#..",
          "...##...",
          "..#.....",
          ".#......",
          "######..",
          "........"),
    "3": (".####...",
          "#....#..",
          ".....#..",
          "..###...",
          ".....#..",
          "#....#..",
          ".####...",
          "........"),
    "4": ("....#...",
          "...##...",
          "..#.#...",
          ".#..#...",
          "######..",
          "....#...",
          "....#...",
          "........"),
    "5": ("######..",
          "#.......",
          "#####...",
          ".....#..",
          ".....#..",
          "#....#..",
          ".####...",
          "........"),
    "6": (".####...",
          "#.......",
          "#.......",
          "#####...",
          "#....#..",
          "#....#..",
          ".####...",
          "........"),
    "7": ("######..",
          ".....#..",
          "....#...",
          "...#....",
          "..#.....",
          "..#.....",
          "..#.....",
          "........"),
    "8": (".####...",
          "#....#..",
          "#....#..",
          ".####...",
          "#....#..",
          "#....#..",
          ".####...",
          "........"),
    "9": (".####...",
          "#....#..",
          "#....#..",
          ".#####..",
          ".....#..",
          ".....#..",
          ".####...",
          "........"),
    "A": ("..##....",
          ".#..#...",
          "#....#..",
          "#....#..",
          "######..",
          "#....#..",
          "#....#..",
          "........"),
    "B": ("#####...",
          "#....#..",
          "#....#..",
          "#####...",
          "#....#..",
          "#....#..",
          "#####...",
          "........"),
    "C": (".####...",
          "#....#..",
          "#.......",
          "#.......",
          "#.......",
          "#....#..",
          ".####...",
          "........"),
    "D": ("####....",
          "#...#...",
          "#....#..",
          "#....#..",
          "#....#..",
          "#...#...",
          "####....",
          "........"),
    "E": ("######..",
          "#.......",
          "#.......",
          "#####...",
          "#.......",
          "#.......",
          "######..",
          "........"),
    "F": ("######..",
          "#.......",
          "#.......",
          "#####...",
          "#.......",
          "#.......",
          "#.......",
          "........"),
    "G": (".####...",
          "#....#..",
          "#.......",
          "#..###..",
          "#....#..",
          "#....#..",
          ".####...",
          "........"),
    "H": ("#....#..",
          "#....#..",
          "#....#..",
          "######..",
          "#....#..",
          "#....#..",
          "#....#..",
          "........"),
    "I": (".#####..",
          "...#....",
          "...#....",
          "...#....",
          "...#....",
          "...#....",
          ".#####..",
          "........"),
    "J": ("..####..",
          "....#...",
          "....#...",
          "....#...",
          "....#...",
          "#...#...",
          ".###....",
          "........"),
    "K": ("#....#..",
          "#...#...",
          "#..#....",
          "###.....",
          "#..#....",
          "#...#...",
          "#....#..",
          "........"),
    "L": ("#.......",
          "#.......",
          "#.......",
          "#.......",
          "#.......",
          "#.......",
          "######..",
          "........"),
    "M": ("#....#..",
          "##..##..",
          "#.##.#..",
          "#.##.#..",
          "#....#..",
          "#....#..",
          "#....#..",
          "........"),
    "N": ("#....#..",
          "##...#..",
          "#.#..#..",
          "#..#.#..",
          "#...##..",
          "#....#..",
          "#....#..",
          "........"),
    "O": (".####...",
          "#....#..",
          "#....#..",
          "#....#..",
          "#....#..",
          "#....#..",
          ".####...",
          "........"),
    "P": ("#####...",
          "#....#..",
          "#....#..",
          "#####...",
          "#.......",
          "#.......",
          "#.......",
          "........"),
    "Q": (".####...",
          "#....#..",
          "#....#..",
          "#....#..",
          "#..#.#..",
          "#...#...",
          ".###.#..",
          "........"),
    "R": ("#####...",
          "#....#..",
          "#....#..",
          "#####...",
          "#..#....",
          "#...#...",
          "#....#..",
          "........"),
    "S": (".####...",
          "#....#..",
          "#.......",
          ".####...",
          ".....#..",
          "#....#..",
          ".####...",
          "........"),
    "T": ("######..",
          "..#.....",
          "..#.....",
          "..#.....",
          "..#.....",
          "..#.....",
          "..#.....",
          "........"),
    "U": ("#....#..",
          "#....#..",
          "#....#..",
          "#....#..",
          "#....#..",
          "#....#..",
          ".####...",
          "........"),
    "V": ("#....#..",
          "#....#..",
          "#....#..",
          ".#..#...",
          ".#..#...",
          "..##....",
          "..##....",
          "........"),
    "W": ("#....#..",
          "#....#..",
          "#....#..",
          "#.##.#..",
          "#.##.#..",
          "##..##..",
          "#....#..",
          "........"),
    "X": ("#....#..",
          ".#..#...",
          "..##....",
          "..##....",
          ".#..#...",
          "#....#..",
          "#....#..",
          "........"),
    "Y": ("#...#...",
          "#...#...",
          ".#.#....",
          "..#.....",
          "..#.....",
          "..#.....",
          "..#.....",
          "........"),
    "Z": ("######..",
          "....#...",
          "...#....",
          "..#.....",
          ".#......",
          "#.......",
          "######..",
          "........"),
}


def glyph_set() -> dict[str, np.ndarray]:
    """The embedded 8x8 bitmaps, one per character, 1 = ink."""
    out = {}
    for ch in CHARSET:
        rows = _GLYPH_ART[ch]
        out[ch] = np.array(
            [[1 if c == "#" else 0 for c in row] for row in rows], dtype=np.uint8
        )
    return out


def _soften_edges(ref: GrayImage) -> GrayImage:
    """Half-tone the outermost ink pixels that touch background."""
    p = ref.pixels.copy()
    ink = p == 0.0
    bg = p == 1.0
    touches = np.zeros_like(ink)
    touches[1:, :] |= bg[:-1, :]
    touches[:-1, :] |= bg[1:, :]
    touches[:, 1:] |= bg[:, :-1]
    touches[:, :-1] |= bg[:, 1:]
    p[ink & touches] = 0.5
    return GrayImage(p)


def gen_reference(
    glyphs: dict[str, np.ndarray], upscale: int, antialias: bool = True
) -> dict[str, GrayImage]:
    """High-resolution references: ink as 0.0 on 1.0, scaled by ``upscale``.

    ``antialias`` adds the one-pixel 0.5 border at full resolution so that
    average pooling of the references is lossy, as a real camera's would be.
    """
    if upscale < 2:
        raise DomainError(f"upscale must be >= 2, got {upscale}")
    refs = {}
    for ch, bitmap in sorted(glyphs.items()):
        if bitmap.shape != (8, 8):
            raise DomainError(f"glyph {ch!r} is not 8x8")
        base = GrayImage(1.0 - bitmap.astype(np.float64))
        ref = upscale_repeat(base, upscale)
        refs[ch] = _soften_edges(ref) if antialias else ref
    return refs


def gen_lowres(refset: dict[str, GrayImage], n: int) -> dict[str, GrayImage]:
    """Camera-model inputs: each reference average-pooled by ``n``."""
    return {ch: downsample_avg(ref, n) for ch, ref in sorted(refset.items())}


def check_discriminable(lowset: dict[str, GrayImage]) -> None:
    """Reject asset sets where two characters alias under pooling."""
    chars = sorted(lowset)
    for i, a in enumerate(chars):
        for b in chars[i + 1 :]:
            if match_percent(lowset[a], lowset[b]) >= 1.0:
                raise DomainError(f"low-res images of {a!r} and {b!r} are identical")


def write_asset_dir(
    out_dir: str | Path, refset: dict[str, GrayImage], lowset: dict[str, GrayImage]
) -> None:
    """Write ref/<char>.pgm and low/<char>.pgm (P5) under ``out_dir``."""
    check_discriminable(lowset)
    root = Path(out_dir)
    for sub, images in (("ref", refset), ("low", lowset)):
        d = root / sub
        d.mkdir(parents=True, exist_ok=True)
        for ch, img in sorted(images.items()):
            (d / f"{ch}.pgm").write_bytes(save_pgm(img, "P5"))
