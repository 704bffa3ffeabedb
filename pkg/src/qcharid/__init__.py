"""Quantum fixed-point search enhancement and identification of low-resolution characters."""

from .errors import CapacityError, DomainError, FormatError
from .simcore import (
    StateVector,
    ShotReadout,
    prepare_product,
    rank1_phase,
    fidelity,
    prob_zero,
    sample_marginals,
)
from .fixedpoint import (
    FixedPointParams,
    SearchProblem,
    oracle_apply,
    diffuser_apply,
    deviation,
    fixed_point_evolve,
    grover_iterate,
    theta_of,
)
from .imaging import (
    GrayImage,
    SegmentBox,
    load_pgm,
    save_pgm,
    quantize,
    downsample_avg,
    upscale_repeat,
    threshold,
    segment_projection,
    match_percent,
)
from .refassets import CHARSET, glyph_set, gen_reference, gen_lowres, write_asset_dir
from .pipeline import (
    EnhanceConfig,
    ScoreTable,
    MatchTable,
    derive_seed,
    enhance,
    classify,
    score_table_batch,
)
from .analysis import (
    HeatmapGrid,
    heatmap,
    heatmap_csv,
    monotonicity_check,
    convergence_curve,
    emit_csv,
)

__version__ = "0.1.0"
