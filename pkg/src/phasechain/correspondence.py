"""Cross-checks between the eigenmode summary and direct signal statistics.

Four analyses, all reducing to rank or circular statistics:

* ``amplitude_energy_correlation`` - do mode amplitudes track how variable
  each point's movement energy (squared speed) is?
* ``energy_phase_matrix`` - pairwise lead/lag computed from movement-energy
  signals instead of speeds, for comparison with mode phase differences;
* ``phase_order_reversal`` - rank correlation between the phase orderings of
  two movement phases (a strong negative value means the order flips);
* ``crp_chpca_agreement`` - rank correlation between pairwise relative
  phases and mode phase differences over all point pairs.

``three_axis_chpca`` repeats the decomposition on signed velocity
components (3 columns per point) instead of speed norms, and aggregates the
three per-axis phases of each point into one amplitude-weighted direction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import analytic_matrix_from_array, hilbert_analytic, normalize_windows
from .chpca import ChpcaResult, ComplexMode, align_to_reference, decompose
from .crp import PairPhaseMatrix, pairwise_circular_mean
from .errors import ConstantSeriesError, DataError
from .kinematics import SpeedSeries, VelocitySeries
from .stats import CorrelationReport, permutation_p, spearman, wrap_angle

_AXES = ("x", "y", "z")


def amplitude_energy_correlation(
    mode: ComplexMode,
    energy_var: np.ndarray,
) -> CorrelationReport:
    """Spearman correlation of mode amplitudes against energy variances."""
    energy_var = np.asarray(energy_var, dtype=float)
    if energy_var.shape != mode.vector.shape:
        raise DataError(
            f"{len(mode.vector)} amplitudes vs {len(energy_var)} energy values"
        )
    return spearman(mode.amplitude, energy_var)


def energy_phase_matrix(speed: SpeedSeries, windows=None, points=None) -> PairPhaseMatrix:
    """Pairwise lead/lag of movement-energy (squared-speed) signals.

    Each point's squared speed is mean-removed and phase-extracted per
    window (the transform never crosses window joins); the per-window phases
    are concatenated and pairwise circular means taken over the joined axis.
    """
    if points is None:
        points = speed.labels
    else:
        points = tuple(points)
        missing = [p for p in points if p not in speed.labels]
        if missing:
            raise DataError(f"unknown speed labels: {missing}")
    if len(points) < 2:
        raise DataError("need at least 2 points")
    cols = [speed.labels.index(p) for p in points]
    wins = normalize_windows(windows, speed.n_samples)
    chunks = []
    for a, b in wins:
        sq = speed.values[a:b][:, cols] ** 2
        for lab, col in zip(points, sq.T):
            if np.ptp(col) == 0:
                raise ConstantSeriesError(
                    f"squared speed of {lab!r} is constant on window ({a}, {b})"
                )
        chunks.append(wrap_angle(np.angle(hilbert_analytic(sq))))
    phases = np.concatenate(chunks, axis=0)
    return PairPhaseMatrix(pairwise_circular_mean(phases), points)


def phase_order_reversal(hodge_a, hodge_b) -> CorrelationReport:
    """Rank correlation between two phase orderings (wrapped angles as-is)."""
    return spearman(np.asarray(hodge_a, float), np.asarray(hodge_b, float))


def matched_pair_values(
    pairs: PairPhaseMatrix, mode: ComplexMode, labels
) -> tuple[np.ndarray, np.ndarray]:
    """Upper-triangle pairwise values from both methods, identically ordered.

    Returns (pair_diffs, mode_diffs): for each pair i < j in label order,
    the pairwise matrix entry (i, j) and the wrapped mode phase difference
    ``hodge_i - hodge_j``.
    """
    labels = tuple(labels)
    if pairs.labels != labels:
        raise DataError("pairwise matrix labels do not match mode labels")
    if len(labels) != len(mode.vector):
        raise DataError("mode vector length does not match labels")
    n = len(labels)
    iu, ju = np.triu_indices(n, k=1)
    hodge = mode.hodge
    return pairs.values[iu, ju], wrap_angle(hodge[iu] - hodge[ju])


def crp_chpca_agreement(
    pairs: PairPhaseMatrix,
    mode: ComplexMode,
    labels,
    n_perm: int = 2000,
    seed: int = 0,
) -> CorrelationReport:
    """Rank agreement between pairwise relative phases and mode differences.

    Spearman over all N(N-1)/2 matched pairs, with both the asymptotic
    p-value and a permutation p-value (one side shuffled ``n_perm`` times).
    """
    a, b = matched_pair_values(pairs, mode, labels)
    return permutation_p(a, b, n_perm=n_perm, seed=seed)


@dataclass(frozen=True)
class ThreeAxisResult:
    """Signed-component decomposition plus per-point aggregated phases."""

    result: ChpcaResult  # over 3N columns labelled "<point>_<axis>"
    point_labels: tuple[str, ...]
    aggregated_phase: np.ndarray  # (N,) amplitude-weighted mean direction

    def __post_init__(self):
        object.__setattr__(self, "point_labels", tuple(self.point_labels))
        arr = np.asarray(self.aggregated_phase, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "aggregated_phase", arr)


def three_axis_chpca(
    vel: VelocitySeries,
    windows=None,
    points=None,
    reference: str | None = None,
    reference_axis: str = "x",
    transform: str = "joined",
) -> ThreeAxisResult:
    """Decomposition over signed velocity components (3 columns per point).

    Column labels are ``<point>_<axis>``.  The gauge is aligned to the
    reference point's ``reference_axis`` component.  Each point's three
    per-axis phases are combined into one direction by the amplitude-weighted
    phasor sum ``arg(sum_axes A e^{j phi})`` with no re-normalization, so
    axes the mode barely uses barely influence the aggregate.
    """
    if points is None:
        points = vel.labels
    else:
        points = tuple(points)
        missing = [p for p in points if p not in vel.labels]
        if missing:
            raise DataError(f"unknown velocity labels: {missing}")
    if reference is None:
        reference = points[0]
    if reference not in points:
        raise DataError(f"reference {reference!r} not among selected points")
    if reference_axis not in _AXES:
        raise DataError(f"reference_axis must be one of {_AXES}")
    cols = [vel.labels.index(p) for p in points]
    values = vel.values[:, cols, :].reshape(vel.n_samples, -1)
    labels = tuple(f"{p}_{ax}" for p in points for ax in _AXES)
    wins = normalize_windows(windows, vel.n_samples)
    matrix = analytic_matrix_from_array(values, labels, wins, transform)
    result = decompose(matrix, transform)
    result = align_to_reference(result, f"{reference}_{reference_axis}")

    vec = result.mode1.vector.reshape(len(points), 3)
    agg = wrap_angle(np.angle(vec.sum(axis=1)))
    return ThreeAxisResult(
        result=result,
        point_labels=points,
        aggregated_phase=agg,
    )
