"""Grayscale image model, PGM file I/O, pooling, and the match-percent score.

Pixels are reals in [0, 1] with 0 = black and 1 = white. Files are PGM with
maxval 255; quantization to 8 bits happens only at the save boundary, with
round-half-away-from-zero so saved bytes are platform-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FormatError


class GrayImage:
    """Width x height grid of brightness values in [0, 1]."""

    __slots__ = ("width", "height", "pixels")

    def __init__(self, pixels: np.ndarray):
        arr = np.asarray(pixels, dtype=np.float64).copy()
        if arr.ndim != 2 or arr.size == 0:
            raise DomainError(f"pixels must be a non-empty 2-d array, got shape {arr.shape}")
        if float(arr.min()) < 0.0 or float(arr.max()) > 1.0:
            raise DomainError("pixel values must lie in [0, 1]")
        self.height, self.width = arr.shape
        self.pixels = arr
        arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


@dataclass(frozen=True)
class SegmentBox:
    """Half-open column/row bounds of one segmented glyph."""

    x0: int
    x1: int
    y0: int
    y1: int


def quantize(img: GrayImage) -> GrayImage:
    """Snap pixels to the 256-level grid used by file storage."""
    return GrayImage(_to_raw(img) / 255.0)


def _to_raw(img: GrayImage) -> np.ndarray:
    # round half away from zero; values are non-negative here
    return np.clip(np.floor(img.pixels * 255.0 + 0.5), 0, 255).astype(np.uint8)


def save_pgm(img: GrayImage, variant: str = "P5") -> bytes:
    """Serialize as PGM with maxval 255. ``variant`` is "P5" (raw) or "P2" (ASCII)."""
    raw = _to_raw(img)
    header = f"{variant}\n{img.width} {img.height}\n255\n".encode("ascii")
    if variant == "P5":
        return header + raw.tobytes()
    if variant == "P2":
        body = "\n".join(" ".join(str(v) for v in row) for row in raw)
        return header + body.encode("ascii") + b"\n"
    raise DomainError(f"unknown PGM variant {variant!r}")


class _Tokenizer:
    """Whitespace/comment-aware scanner over PGM header bytes."""

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def next_token(self, what: str) -> bytes:
        d, i = self.data, self.pos
        while i < len(d):
            if d[i : i + 1].isspace():
                i += 1
            elif d[i : i + 1] == b"#":
                while i < len(d) and d[i : i + 1] != b"\n":
                    i += 1
            else:
                break
        if i >= len(d):
            raise FormatError(f"truncated header: expected {what}", i)
        start = i
        while i < len(d) and not d[i : i + 1].isspace() and d[i : i + 1] != b"#":
            i += 1
        self.pos = i
        return d[start:i]

    def next_int(self, what: str) -> int:
        start = self.pos
        tok = self.next_token(what)
        try:
            return int(tok)
        except ValueError:
            raise FormatError(f"expected integer {what}, got {tok!r}", start) from None


def load_pgm(data: bytes) -> GrayImage:
    """Parse a PGM byte stream (P2 or P5, maxval 255) into a GrayImage."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"bad magic {magic!r}, expected P2 or P5", 0)
    tok = _Tokenizer(data, 2)
    width = tok.next_int("width")
    height = tok.next_int("height")
    if width <= 0 or height <= 0:
        raise FormatError(f"bad dimensions {width}x{height}", tok.pos)
    maxval_at = tok.pos
    maxval = tok.next_int("maxval")
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval}, only 255", maxval_at)
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the payload
        if tok.pos >= len(data) or not data[tok.pos : tok.pos + 1].isspace():
            raise FormatError("missing whitespace before raster", tok.pos)
        start = tok.pos + 1
        payload = data[start : start + count]
        if len(payload) < count:
            raise FormatError(
                f"truncated raster: expected {count} bytes, got {len(payload)}", len(data)
            )
        raw = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    else:
        values = []
        for k in range(count):
            at = tok.pos
            v = tok.next_int(f"pixel {k}")
            if not 0 <= v <= 255:
                raise FormatError(f"pixel value {v} exceeds maxval", at)
            values.append(v)
        raw = np.array(values, dtype=np.uint8).reshape(height, width)
    return GrayImage(raw / 255.0)


def downsample_avg(img: GrayImage, n: int) -> GrayImage:
    """Average-pool n x n blocks; the camera model for edge pixels."""
    if n < 1:
        raise DomainError(f"pool factor must be >= 1, got {n}")
    if img.width % n or img.height % n:
        raise DomainError(f"dimensions {img.width}x{img.height} not divisible by {n}")
    p = img.pixels.reshape(img.height // n, n, img.width // n, n)
    return GrayImage(p.mean(axis=(1, 3)))


def upscale_repeat(img: GrayImage, n: int) -> GrayImage:
    """Enlarge by repeating each pixel into an n x n block."""
    if n < 1:
        raise DomainError(f"scale factor must be >= 1, got {n}")
    return GrayImage(np.repeat(np.repeat(img.pixels, n, axis=0), n, axis=1))


def threshold(img: GrayImage, t: float) -> GrayImage:
    """Bitonal image: pixel < t goes to 0, pixel >= t goes to 1."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"threshold {t!r} outside [0, 1]")
    return GrayImage(np.where(img.pixels < t, 0.0, 1.0))


def segment_projection(img: GrayImage, ink_threshold: float) -> list[SegmentBox]:
    """Split dark-on-light glyphs by column projection.

    A column is ink if any of its pixels is below ``ink_threshold``; maximal
    runs of ink columns become boxes spanning the tight row range of their
    dark pixels, ordered left to right. A blank image yields no boxes.
    """
    if not 0.0 <= ink_threshold < 1.0:
        raise DomainError(f"ink threshold {ink_threshold!r} outside [0, 1)")
    dark = img.pixels < ink_threshold
    ink_cols = dark.any(axis=0)
    boxes = []
    x = 0
    while x < img.width:
        if not ink_cols[x]:
            x += 1
            continue
        x0 = x
        while x < img.width and ink_cols[x]:
            x += 1
        rows = np.nonzero(dark[:, x0:x].any(axis=1))[0]
        boxes.append(SegmentBox(x0=x0, x1=x, y0=int(rows[0]), y1=int(rows[-1]) + 1))
    return boxes


def match_percent(x: GrayImage, y: GrayImage) -> float:
    """1 - mean absolute pixel difference; 1.0 iff the images are identical."""
    if (x.width, x.height) != (y.width, y.height):
        raise DomainError(
            f"dimension mismatch: {x.width}x{x.height} vs {y.width}x{y.height}"
        )
    return 1.0 - float(np.abs(x.pixels - y.pixels).mean())
