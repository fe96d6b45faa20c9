"""Analytic signals and the complex data matrix they form.

Each real series is made zero-mean and extended to its analytic signal
through the frequency domain: forward FFT, positive frequencies doubled,
negative frequencies zeroed, DC and (for even lengths) Nyquist kept at unit
weight, inverse FFT.  The real part of the result equals the mean-removed
input; the imaginary part is its Hilbert transform, so a cosine becomes
``exp(+j w t)`` and instantaneous phase increases with time.

``build_analytic_matrix`` applies this per variable over one or more sample
windows and standardizes each column to zero complex mean and unit
mean-square modulus, producing the matrix that feeds the complex PCA.  With
``transform="joined"`` the windows are concatenated first and transformed as
one stream; with ``transform="per_window"`` each window is transformed
separately and the analytic pieces are concatenated afterwards.  No taper is
applied in either mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantSeriesError, DataError, ShapeError
from .io_model import _freeze
from .kinematics import SpeedSeries

TRANSFORM_MODES = ("joined", "per_window")


def hilbert_analytic(x) -> np.ndarray:
    """Analytic signal of ``x`` along axis 0 after mean removal.

    Parameters
    ----------
    x : array_like, real, shape (T,) or (T, N), T >= 2

    Returns
    -------
    complex ndarray of the same shape; ``out.real`` equals the mean-removed
    input and ``out.imag`` is its Hilbert transform.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim not in (1, 2):
        raise ShapeError(f"expected 1-D or 2-D input, got shape {x.shape}")
    n = x.shape[0]
    if n < 2:
        raise DataError(f"need at least 2 samples, got {n}")
    x0 = x - x.mean(axis=0, keepdims=x.ndim > 1)
    spec = np.fft.fft(x0, axis=0)
    w = np.zeros(n)
    w[0] = 1.0
    if n % 2 == 0:
        w[n // 2] = 1.0
        w[1 : n // 2] = 2.0
    else:
        w[1 : (n + 1) // 2] = 2.0
    if x.ndim == 2:
        w = w[:, None]
    return np.fft.ifft(spec * w, axis=0)


def standardize_complex(z, label: str = "series") -> np.ndarray:
    """Zero-mean, unit mean-square-modulus version of a complex series.

    Already-standardized input passes through unchanged (up to roundoff).
    A constant column has nothing to standardize and raises
    ``ConstantSeriesError`` naming the offending variable.
    """
    z = np.asarray(z, dtype=complex)
    z0 = z - z.mean(axis=0, keepdims=z.ndim > 1)
    scale = np.sqrt(np.mean(np.abs(z0) ** 2, axis=0, keepdims=z.ndim > 1))
    if np.any(scale == 0):
        if z.ndim == 1:
            raise ConstantSeriesError(f"variable {label!r} is constant")
        dead = int(np.flatnonzero(scale.ravel() == 0)[0])
        raise ConstantSeriesError(f"variable column {dead} is constant")
    return z0 / scale


@dataclass(frozen=True)
class AnalyticMatrix:
    """Standardized analytic data, one column per variable."""

    values: np.ndarray  # (T_seg, N) complex128
    labels: tuple[str, ...]
    windows: tuple[tuple[int, int], ...]  # source sample ranges, half-open

    def __post_init__(self):
        z = np.asarray(self.values, dtype=complex)
        if z.ndim != 2:
            raise ShapeError(f"analytic matrix must be 2-D, got {z.shape}")
        if z.shape[1] != len(self.labels):
            raise ShapeError("label count does not match matrix columns")
        object.__setattr__(self, "values", _freeze(z))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(
            self, "windows", tuple((int(a), int(b)) for a, b in self.windows)
        )

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_vars(self) -> int:
        return self.values.shape[1]


def normalize_windows(windows, n_samples: int) -> tuple[tuple[int, int], ...]:
    """Validate half-open sample windows against a series length."""
    if windows is None:
        windows = [(0, n_samples)]
    if isinstance(windows, tuple) and len(windows) == 2 and np.isscalar(windows[0]):
        windows = [windows]
    out = []
    for win in windows:
        a, b = int(win[0]), int(win[1])
        if not (0 <= a < b <= n_samples):
            raise DataError(
                f"window ({a}, {b}) out of range for {n_samples} samples"
            )
        out.append((a, b))
    if not out:
        raise DataError("need at least one window")
    return tuple(out)


def analytic_matrix_from_array(
    values: np.ndarray,
    labels,
    windows=None,
    transform: str = "joined",
) -> AnalyticMatrix:
    """Analytic + standardized matrix from a raw (T, N) real array."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ShapeError(f"expected (T, N) values, got {values.shape}")
    if transform not in TRANSFORM_MODES:
        raise DataError(f"transform must be one of {TRANSFORM_MODES}")
    labels = tuple(labels)
    if values.shape[1] != len(labels):
        raise ShapeError("label count does not match value columns")
    if values.shape[1] < 2:
        raise DataError("need at least 2 variables")
    wins = normalize_windows(windows, values.shape[0])
    total = sum(b - a for a, b in wins)
    if total < 4:
        raise DataError(f"windows cover only {total} samples; need >= 4")
    for j, lab in enumerate(labels):
        seg = np.concatenate([values[a:b, j] for a, b in wins])
        if np.ptp(seg) == 0:
            raise ConstantSeriesError(
                f"variable {lab!r} is constant over the analysis windows"
            )
    if transform == "joined":
        joined = np.concatenate([values[a:b] for a, b in wins], axis=0)
        z = hilbert_analytic(joined)
    else:
        z = np.concatenate(
            [hilbert_analytic(values[a:b]) for a, b in wins], axis=0
        )
    z = standardize_complex(z)
    return AnalyticMatrix(z, labels, wins)


def build_analytic_matrix(
    speed: SpeedSeries,
    windows=None,
    points=None,
    transform: str = "joined",
) -> AnalyticMatrix:
    """Analytic matrix of selected speed columns over analysis windows.

    Parameters
    ----------
    speed : SpeedSeries
    windows : (a, b) pair, list of pairs, or None for the full series;
        half-open ranges into the speed samples
    points : labels to keep (default: all, in series order)
    transform : "joined" (one transform over the concatenated windows) or
        "per_window" (transform each window, then concatenate)
    """
    if points is None:
        points = speed.labels
    else:
        points = tuple(points)
        missing = [p for p in points if p not in speed.labels]
        if missing:
            raise DataError(f"unknown speed labels: {missing}")
    cols = [speed.labels.index(p) for p in points]
    return analytic_matrix_from_array(
        speed.values[:, cols], points, windows, transform
    )
