"""Structural diagnostics of the two search variants, emitted as data.

The heatmaps scan all (P0(initial), P0(target)) pairs of real 1-qubit states
and record how far one iteration lands from the target in measurement
probability. Standard Grover shows zero error only on the diagonal and the
theta = pi/3, 5pi/3 curves and overshoots elsewhere; the fixed-point variant
is zero on the diagonal and degrades monotonically away from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .fixedpoint import FixedPointParams, SearchProblem, fixed_point_evolve, grover_iterate
from .simcore import prepare_product, prob_zero

ALGORITHMS = ("grover", "fixed_point")


@dataclass(frozen=True)
class HeatmapGrid:
    """|P0(final) - P0(target)| over a resolution x resolution probability grid.

    ``cells[i][j]`` is the value at P0(target) = axis[i], P0(initial) = axis[j].
    """

    algorithm: str
    resolution: int
    axis: np.ndarray
    cells: np.ndarray


def heatmap(algorithm: str, resolution: int, params: FixedPointParams | None = None) -> HeatmapGrid:
    """Run one iteration per grid cell and record the probability mismatch.

    Grid endpoints include 0 and 1 exactly. ``params`` applies to the
    fixed-point variant only; the default is one pi/3 level.
    """
    if algorithm not in ALGORITHMS:
        raise DomainError(f"algorithm must be one of {ALGORITHMS}, got {algorithm!r}")
    if resolution < 3:
        raise DomainError(f"resolution must be >= 3, got {resolution}")
    if params is None:
        params = FixedPointParams()
    axis = np.linspace(0.0, 1.0, resolution)
    cells = np.empty((resolution, resolution))
    for i, p_target in enumerate(axis):
        target = prepare_product([p_target])
        for j, p_initial in enumerate(axis):
            if algorithm == "grover":
                initial = prepare_product([p_initial])
                final = grover_iterate(initial, target, initial)
            else:
                final = fixed_point_evolve(SearchProblem([p_initial], target), params)
            cells[i, j] = abs(prob_zero(final, 0) - p_target)
    return HeatmapGrid(algorithm=algorithm, resolution=resolution, axis=axis, cells=cells)


def monotonicity_check(grid: HeatmapGrid, tol: float = 1e-9) -> tuple[bool, tuple[int, int] | None]:
    """Whether every row degrades monotonically away from the diagonal.

    Returns (True, None) if along each row (fixed target) cell values never
    decrease with distance from the diagonal, else (False, (row, col)) for
    the first violation scanning rows top to bottom.
    """
    cells = grid.cells
    for i in range(grid.resolution):
        for j in range(i, grid.resolution - 1):
            if cells[i, j + 1] < cells[i, j] - tol:
                return False, (i, j + 1)
        for j in range(i, 0, -1):
            if cells[i, j - 1] < cells[i, j] - tol:
                return False, (i, j - 1)
    return True, None


def convergence_curve(eps_values: Sequence[float], max_m: int) -> list[tuple[float, int, float]]:
    """Deviation after m = 1..max_m recursion levels for each starting eps.

    Each row is (eps, m, deviation); deviations follow eps^(3^m).
    """
    if not 1 <= max_m <= 4:
        raise DomainError(f"max_m must be in 1..4, got {max_m}")
    for eps in eps_values:
        if not 0.0 < eps < 1.0:
            raise DomainError(f"eps {eps!r} outside (0, 1)")
    target = prepare_product([1.0])
    rows = []
    for eps in eps_values:
        problem = SearchProblem([1.0 - eps], target)
        for m in range(1, max_m + 1):
            final = fixed_point_evolve(problem, FixedPointParams(recursions=m))
            rows.append((float(eps), m, 1.0 - prob_zero(final, 0)))
    return rows


def _format_cell(cell) -> str:
    if isinstance(cell, str):
        return cell
    if isinstance(cell, (int, np.integer)):
        return str(int(cell))
    return format(float(cell), ".10g")


def emit_csv(header: Sequence[str], rows: Iterable[Sequence]) -> bytes:
    """Byte-deterministic CSV: UTF-8, comma separators, line-feed terminated.

    Reals print with 10 significant digits. Ragged rows are rejected.
    """
    lines = [",".join(str(h) for h in header)]
    for k, row in enumerate(rows):
        cells = list(row)
        if len(cells) != len(header):
            raise DomainError(f"row {k} has {len(cells)} cells, header has {len(header)}")
        lines.append(",".join(_format_cell(c) for c in cells))
    return ("\n".join(lines) + "\n").encode("utf-8")


def heatmap_csv(grid: HeatmapGrid) -> bytes:
    """Matrix CSV of a heatmap: first column is P0(target), one column per P0(initial)."""
    header = ["p0_target"] + [_format_cell(v) for v in grid.axis]
    rows = [[grid.axis[i]] + list(grid.cells[i]) for i in range(grid.resolution)]
    return emit_csv(header, rows)
