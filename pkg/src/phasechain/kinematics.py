"""Per-point velocities, speed norms, and movement-energy summaries.

Velocities are forward frame differences in meters/frame (no frame-rate
scaling), so a T-frame sequence yields T-1 velocity samples; sample ``t``
covers the step from frame ``t`` to frame ``t+1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, ShapeError
from .io_model import MotionSequence, _freeze


@dataclass(frozen=True)
class VelocitySeries:
    """Frame-difference velocities, shape (T-1, N, 3), meters/frame."""

    values: np.ndarray
    labels: tuple[str, ...]
    frame_rate: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 3 or v.shape[2] != 3:
            raise ShapeError(f"velocity values must be (T-1, N, 3), got {v.shape}")
        if v.shape[1] != len(self.labels):
            raise ShapeError("label count does not match velocity columns")
        object.__setattr__(self, "values", _freeze(v))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class SpeedSeries:
    """Euclidean speed per point, shape (T-1, N), meters/frame, >= 0."""

    values: np.ndarray
    labels: tuple[str, ...]
    frame_rate: float

    def __post_init__(self):
        s = np.asarray(self.values, dtype=float)
        if s.ndim != 2:
            raise ShapeError(f"speed values must be (T-1, N), got {s.shape}")
        if s.shape[1] != len(self.labels):
            raise ShapeError("label count does not match speed columns")
        if s.size and s.min() < 0:
            raise DataError("speeds must be non-negative")
        object.__setattr__(self, "values", _freeze(s))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    def column(self, label: str) -> np.ndarray:
        if label not in self.labels:
            raise DataError(f"unknown speed label {label!r}")
        return self.values[:, self.labels.index(label)]


def velocity(seq: MotionSequence) -> VelocitySeries:
    """Forward frame differences of positions."""
    return VelocitySeries(
        np.diff(seq.positions, axis=0), seq.labels, seq.frame_rate
    )


def speed_norm(vel: VelocitySeries) -> SpeedSeries:
    """Euclidean norm of each velocity sample."""
    return SpeedSeries(
        np.linalg.norm(vel.values, axis=2), vel.labels, vel.frame_rate
    )


def energy_variance(speed: SpeedSeries, window: tuple[int, int]) -> np.ndarray:
    """Population variance of squared speed per point over ``window``.

    ``window`` is a half-open sample range ``(a, b)`` into the speed series.
    Squared speed tracks kinetic energy per unit mass up to the constant 1/2,
    so this is the movement-energy variability of each point.
    """
    a, b = window
    if not (0 <= a < b <= speed.n_samples):
        raise DataError(
            f"window {window} out of range for {speed.n_samples} speed samples"
        )
    sq = speed.values[a:b] ** 2
    return sq.var(axis=0)
