"""Phase-lag analysis of multivariate movement signals.

The package turns a motion-capture sequence into a compact description of
who leads whom: analytic signals per variable, a complex correlation matrix,
its leading eigenmode (phase + amplitude per variable), a shift-based null
test for mode significance, strike segmentation into backswing/downswing
windows, a pairwise relative-phase baseline, and exporters for skeleton
networks and per-vertex phase fields.
"""

__version__ = "0.1.0"

from .analytic import (
    AnalyticMatrix,
    analytic_matrix_from_array,
    build_analytic_matrix,
    hilbert_analytic,
    standardize_complex,
)
from .chpca import (
    ChpcaResult,
    ComplexMode,
    RrsReport,
    TrialEnsemble,
    align_mode,
    align_to_reference,
    canonicalize_gauge,
    complex_correlation,
    decompose,
    eig_hermitian,
    eig_hermitian_real_embedding,
    ensemble_average,
    rrs_test,
    run_chpca,
    run_chpca_per_trial,
)
from .correspondence import (
    ThreeAxisResult,
    amplitude_energy_correlation,
    crp_chpca_agreement,
    energy_phase_matrix,
    matched_pair_values,
    phase_order_reversal,
    three_axis_chpca,
)
from .crp import PairPhaseMatrix, crp_matrix, instantaneous_phase, pairwise_circular_mean
from .errors import (
    ConstantSeriesError,
    DataError,
    DegeneracyError,
    MissingStageError,
    ParseError,
    PhasechainError,
    ShapeError,
    UndefinedReferenceError,
    UnknownLabelError,
)
from .io_model import (
    MotionSequence,
    Skeleton,
    builtin_skeleton,
    load_motion,
    load_skeleton,
    save_motion,
    save_skeleton,
    select_points,
)
from .kinematics import SpeedSeries, VelocitySeries, energy_variance, speed_norm, velocity
from .netexport import (
    composite_scores,
    export_network,
    export_phase_field,
    mean_phase_start_pose,
    rank_normalize,
)
from .segmentation import (
    SegmentationConfig,
    SegmentationResult,
    Trial,
    phase_windows,
    prominence_elbow_split,
    segment_phases,
)
from .stats import (
    CircularMean,
    CorrelationReport,
    circular_mean_resultant,
    permutation_p,
    spearman,
    wrap_angle,
)
from .synth import OscillatorSpec, StrikePlan, gen_phase_lagged_speeds, gen_strike_sequence

__all__ = [
    "__version__",
    "AnalyticMatrix",
    "ChpcaResult",
    "CircularMean",
    "ComplexMode",
    "ConstantSeriesError",
    "CorrelationReport",
    "DataError",
    "DegeneracyError",
    "MissingStageError",
    "MotionSequence",
    "OscillatorSpec",
    "PairPhaseMatrix",
    "ParseError",
    "PhasechainError",
    "RrsReport",
    "SegmentationConfig",
    "SegmentationResult",
    "ShapeError",
    "Skeleton",
    "SpeedSeries",
    "StrikePlan",
    "ThreeAxisResult",
    "Trial",
    "TrialEnsemble",
    "UndefinedReferenceError",
    "UnknownLabelError",
    "VelocitySeries",
    "align_mode",
    "align_to_reference",
    "amplitude_energy_correlation",
    "analytic_matrix_from_array",
    "build_analytic_matrix",
    "builtin_skeleton",
    "canonicalize_gauge",
    "circular_mean_resultant",
    "complex_correlation",
    "composite_scores",
    "crp_chpca_agreement",
    "crp_matrix",
    "decompose",
    "eig_hermitian",
    "eig_hermitian_real_embedding",
    "energy_phase_matrix",
    "energy_variance",
    "ensemble_average",
    "export_network",
    "export_phase_field",
    "gen_phase_lagged_speeds",
    "gen_strike_sequence",
    "hilbert_analytic",
    "instantaneous_phase",
    "load_motion",
    "load_skeleton",
    "matched_pair_values",
    "mean_phase_start_pose",
    "pairwise_circular_mean",
    "permutation_p",
    "phase_order_reversal",
    "phase_windows",
    "prominence_elbow_split",
    "rank_normalize",
    "rrs_test",
    "run_chpca",
    "run_chpca_per_trial",
    "save_motion",
    "save_skeleton",
    "segment_phases",
    "select_points",
    "spearman",
    "speed_norm",
    "standardize_complex",
    "three_axis_chpca",
    "velocity",
    "wrap_angle",
]
