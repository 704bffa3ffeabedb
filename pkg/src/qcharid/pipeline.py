"""Enhance-and-identify loop: assume a reference character, pull the upscaled
image toward it with fixed-point search, score the result, pick the argmax.

Two operation modes mirror the experiment design: ``single_qubit`` evolves
every pixel independently (p * n^2 one-qubit searches), ``block`` evolves each
n x n block as one n^2-qubit register and reads per-qubit marginals. Readout
is exact when shots == 0, otherwise sampled frequencies with a per-pixel (or
per-block) seed derived from the global seed, so results never depend on
execution order.

Internally all pixels or blocks are evolved as one batched array; the batch
kernel applies the same preparation-rotation and rank-one updates as
``fixedpoint.fixed_point_evolve`` and the tests pin the two paths to agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError
from .fixedpoint import FixedPointParams
from .imaging import GrayImage, match_percent, upscale_repeat
from .refassets import CHARSET
from .simcore import MAX_QUBITS, mix64, _GOLDEN

_MODES = ("single_qubit", "block")
_MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO64 = float(2**64)


@dataclass(frozen=True)
class EnhanceConfig:
    """Experiment design: operation mode, geometry, readout, and phases."""

    mode: str = "single_qubit"
    scale_n: int = 2
    shots: int = 256
    seed: int = 1
    params: FixedPointParams = FixedPointParams()

    def __post_init__(self):
        if self.mode not in _MODES:
            raise DomainError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.scale_n < 2:
            raise DomainError(f"scale_n must be >= 2, got {self.scale_n}")
        if self.shots < 0:
            raise DomainError(f"shots must be >= 0, got {self.shots}")
        if self.mode == "block" and self.scale_n**2 > MAX_QUBITS:
            raise CapacityError(
                f"block mode needs scale_n^2 = {self.scale_n**2} qubits, cap is {MAX_QUBITS}"
            )


@dataclass(frozen=True)
class ScoreTable:
    """Match percent against every candidate reference, plus summary stats."""

    rows: tuple[tuple[str, float], ...]
    mean: float
    mean_deviation: float
    best: str


@dataclass(frozen=True)
class MatchTable:
    """Per-character (own match, mean, mean deviation) rows with grand means."""

    rows: tuple[tuple[str, float, float, float], ...]
    grand_own: float
    grand_mean: float
    grand_mean_deviation: float


def derive_seed(seed: int, index: int) -> int:
    """Deterministic per-index seed: SplitMix64 finalizer of seed XOR (index+1)."""
    state = ((seed & _MASK64) ^ (index + 1)) & _MASK64
    return int(mix64(state))


def _derived_seeds(seed: int, count: int) -> np.ndarray:
    idx = np.arange(1, count + 1, dtype=np.uint64)
    return mix64(np.uint64(seed & _MASK64) ^ idx)


# --- batched statevector kernel -------------------------------------------
# One row per independent problem; qubit 0 is the most significant index bit,
# matching simcore's layout.


def _apply_rotations(x: np.ndarray, cos_v: np.ndarray, sin_v: np.ndarray, invert: bool) -> np.ndarray:
    batch, dim = x.shape
    for q in range(cos_v.shape[1]):
        shaped = x.reshape(batch, 2**q, 2, dim >> (q + 1))
        x0 = shaped[:, :, 0, :].copy()
        x1 = shaped[:, :, 1, :].copy()
        c = cos_v[:, q][:, None, None]
        s = sin_v[:, q][:, None, None]
        if invert:
            shaped[:, :, 0, :] = c * x0 + s * x1
            shaped[:, :, 1, :] = -s * x0 + c * x1
        else:
            shaped[:, :, 0, :] = c * x0 - s * x1
            shaped[:, :, 1, :] = s * x0 + c * x1
    return x


def _mark(x: np.ndarray, targets: np.ndarray, angle: float) -> np.ndarray:
    inner = np.einsum("bd,bd->b", targets.conj(), x)
    x -= (1.0 - np.exp(1j * angle)) * inner[:, None] * targets
    return x


def _product_states(cos_v: np.ndarray, sin_v: np.ndarray) -> np.ndarray:
    batch, n = cos_v.shape
    out = np.ones((batch, 1), dtype=np.complex128)
    for q in range(n):
        pair = np.stack([cos_v[:, q], sin_v[:, q]], axis=1).astype(np.complex128)
        out = (out[:, :, None] * pair[:, None, :]).reshape(batch, -1)
    return out


def _evolve_batch(v_init: np.ndarray, v_target: np.ndarray, params: FixedPointParams) -> np.ndarray:
    batch, n = v_init.shape
    cos_i, sin_i = np.sqrt(v_init), np.sqrt(1.0 - v_init)
    targets = _product_states(np.sqrt(v_target), np.sqrt(1.0 - v_target))
    phi, psi = params.phi, params.psi
    phase_psi = np.exp(1j * psi)

    def apply_u(level: int, x: np.ndarray) -> np.ndarray:
        if level == 0:
            return _apply_rotations(x, cos_i, sin_i, invert=False)
        x = apply_u(level - 1, x)
        x = _mark(x, targets, phi)
        x = apply_u_dag(level - 1, x)
        x[:, 0] *= phase_psi
        return apply_u(level - 1, x)

    def apply_u_dag(level: int, x: np.ndarray) -> np.ndarray:
        if level == 0:
            return _apply_rotations(x, cos_i, sin_i, invert=True)
        x = apply_u_dag(level - 1, x)
        x[:, 0] *= phase_psi.conjugate()
        x = apply_u(level - 1, x)
        x = _mark(x, targets, -phi)
        return apply_u_dag(level - 1, x)

    start = np.zeros((batch, 2**n), dtype=np.complex128)
    start[:, 0] = 1.0
    return apply_u(params.recursions, start)


def _marginal_zero(x: np.ndarray, n: int) -> np.ndarray:
    batch, dim = x.shape
    probs = np.abs(x) ** 2
    out = np.empty((batch, n))
    for q in range(n):
        out[:, q] = probs.reshape(batch, 2**q, 2, dim >> (q + 1))[:, :, 0, :].sum(axis=(1, 2))
    return np.clip(out, 0.0, 1.0)


def _sampled_zero(x: np.ndarray, n: int, shots: int, seeds: np.ndarray) -> np.ndarray:
    batch, dim = x.shape
    probs = np.abs(x) ** 2
    steps = np.arange(1, shots + 1, dtype=np.uint64) * _GOLDEN
    u = mix64(seeds[:, None] + steps[None, :]).astype(np.float64) / _TWO64
    if dim == 2:
        idx = (u >= probs[:, [0]]).astype(np.int64)
    else:
        cum = np.cumsum(probs, axis=1)
        idx = (u[:, :, None] >= cum[:, None, :]).sum(axis=2)
        idx = np.minimum(idx, dim - 1)
    out = np.empty((batch, n))
    for q in range(n):
        bit = (idx >> (n - 1 - q)) & 1
        out[:, q] = np.count_nonzero(bit == 0, axis=1) / shots
    return out


def _to_blocks(pixels: np.ndarray, n: int) -> np.ndarray:
    h, w = pixels.shape
    return pixels.reshape(h // n, n, w // n, n).transpose(0, 2, 1, 3).reshape(-1, n * n)


def _from_blocks(values: np.ndarray, height: int, width: int, n: int) -> np.ndarray:
    return (
        values.reshape(height // n, width // n, n, n)
        .transpose(0, 2, 1, 3)
        .reshape(height, width)
    )


# --- public operations ------------------------------------------------------


def enhance(low: GrayImage, ref: GrayImage, cfg: EnhanceConfig) -> GrayImage:
    """Pull the upscaled low-resolution image toward one assumed reference.

    The low image is pixel-repeated by scale_n, then every pixel (or every
    n x n block) is prepared as a product state, evolved toward the matching
    reference pixels by the fixed-point recursion, and read back out as
    P(|0>) per qubit, exactly or from sampled shots.
    """
    n = cfg.scale_n
    if (ref.width, ref.height) != (low.width * n, low.height * n):
        raise DomainError(
            f"reference {ref.width}x{ref.height} is not {n}x the "
            f"low-resolution {low.width}x{low.height}"
        )
    up = upscale_repeat(low, n)
    if cfg.mode == "single_qubit":
        v_init = up.pixels.reshape(-1, 1)
        v_target = ref.pixels.reshape(-1, 1)
        final = _evolve_batch(v_init, v_target, cfg.params)
        if cfg.shots == 0:
            vals = _marginal_zero(final, 1)
        else:
            vals = _sampled_zero(final, 1, cfg.shots, _derived_seeds(cfg.seed, v_init.shape[0]))
        return GrayImage(vals.reshape(ref.height, ref.width))

    v_init = _to_blocks(up.pixels, n)
    v_target = _to_blocks(ref.pixels, n)
    final = _evolve_batch(v_init, v_target, cfg.params)
    if cfg.shots == 0:
        vals = _marginal_zero(final, n * n)
    else:
        vals = _sampled_zero(final, n * n, cfg.shots, _derived_seeds(cfg.seed, v_init.shape[0]))
    return GrayImage(_from_blocks(vals, ref.height, ref.width, n))


def _require_charset(images: dict[str, GrayImage], kind: str) -> None:
    missing = [ch for ch in CHARSET if ch not in images]
    if missing:
        raise DomainError(f"{kind} set is missing characters: {''.join(missing)}")


def classify(low: GrayImage, refs: dict[str, GrayImage], cfg: EnhanceConfig) -> tuple[str, ScoreTable]:
    """Enhance against all 36 references and pick the best-matching character.

    Ties break toward the lowest codepoint.
    """
    _require_charset(refs, "reference")
    rows = []
    for ch in CHARSET:
        enhanced = enhance(low, refs[ch], cfg)
        rows.append((ch, match_percent(enhanced, refs[ch])))
    scores = [v for _, v in rows]
    mean = sum(scores) / len(scores)
    mean_dev = sum(abs(v - mean) for v in scores) / len(scores)
    best, best_score = rows[0]
    for ch, v in rows[1:]:
        if v > best_score:
            best, best_score = ch, v
    table = ScoreTable(rows=tuple(rows), mean=mean, mean_deviation=mean_dev, best=best)
    return best, table


def score_table_batch(
    lows: dict[str, GrayImage], refs: dict[str, GrayImage], cfg: EnhanceConfig
) -> MatchTable:
    """Own-match, mean, and mean deviation per character, plus grand means."""
    _require_charset(lows, "low-resolution")
    _require_charset(refs, "reference")
    rows = []
    for ch in CHARSET:
        _, table = classify(lows[ch], refs, cfg)
        own = dict(table.rows)[ch]
        rows.append((ch, own, table.mean, table.mean_deviation))
    count = len(rows)
    return MatchTable(
        rows=tuple(rows),
        grand_own=sum(r[1] for r in rows) / count,
        grand_mean=sum(r[2] for r in rows) / count,
        grand_mean_deviation=sum(r[3] for r in rows) / count,
    )
