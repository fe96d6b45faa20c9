"""Pairwise continuous relative phase between point speeds.

For each point the instantaneous phase is the angle of its analytic speed
signal; for each pair (i, j) the relative phase is the circular mean over
time of ``phase_i(t) - phase_j(t)``.  Sign convention: a positive (i, j)
entry means point i leads point j, matching the eigenmode phase convention,
so the two methods' pairwise phase differences are directly comparable.

This is the O(N^2) baseline the eigenmode summary replaces: it needs
N(N-1)/2 numbers where the mode needs N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import hilbert_analytic, normalize_windows
from .errors import ConstantSeriesError, DataError, ShapeError
from .io_model import _freeze
from .kinematics import SpeedSeries
from .stats import wrap_angle


def instantaneous_phase(x) -> np.ndarray:
    """Angle of the analytic signal of a real series (mean removed first)."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ShapeError(f"expected a 1-D series, got {x.shape}")
    if np.ptp(x) == 0:
        raise ConstantSeriesError("constant series has no instantaneous phase")
    return wrap_angle(np.angle(hilbert_analytic(x)))


@dataclass(frozen=True)
class PairPhaseMatrix:
    """Antisymmetric matrix of circular-mean pairwise phase differences."""

    values: np.ndarray  # (N, N) wrapped angles, diagonal 0
    labels: tuple[str, ...]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ShapeError(f"pair matrix must be square, got {v.shape}")
        if v.shape[0] != len(self.labels):
            raise ShapeError("label count does not match matrix size")
        object.__setattr__(self, "values", _freeze(v))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_points(self) -> int:
        return len(self.labels)

    def upper_triangle(self) -> list[tuple[str, str, float]]:
        """(label_i, label_j, value) for i < j in label order."""
        out = []
        for i in range(self.n_points):
            for j in range(i + 1, self.n_points):
                out.append((self.labels[i], self.labels[j], float(self.values[i, j])))
        return out


def pairwise_circular_mean(phases: np.ndarray) -> np.ndarray:
    """Circular mean of phase differences for all pairs, from (T, N) phases.

    Entry (i, j) is ``arg(sum_t exp(j(phase_i - phase_j)))``; computed via
    one phasor Gram product.
    """
    p = np.exp(1j * np.asarray(phases, dtype=float))
    s = p.T @ np.conj(p)
    m = wrap_angle(np.angle(s))
    np.fill_diagonal(m, 0.0)
    return m


def crp_matrix(speed: SpeedSeries, windows=None, points=None) -> PairPhaseMatrix:
    """Pairwise relative phase of selected speed columns over windows.

    Phases are computed per window (the transform never crosses window
    joins) and concatenated before the circular mean.
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
        seg = speed.values[a:b][:, cols]
        for lab, col in zip(points, seg.T):
            if np.ptp(col) == 0:
                raise ConstantSeriesError(
                    f"point {lab!r} is constant on window ({a}, {b})"
                )
        chunks.append(wrap_angle(np.angle(hilbert_analytic(seg))))
    phases = np.concatenate(chunks, axis=0)
    return PairPhaseMatrix(pairwise_circular_mean(phases), points)
