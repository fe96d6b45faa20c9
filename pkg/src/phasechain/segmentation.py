"""Automatic strike segmentation from the striking-wrist height signal.

The detector works in five steps on a 1-D signal z(t):

1. collect candidate tops: strict local maxima with topographic prominence
   at least ``loose_prominence_floor`` times the signal range;
2. split the sorted prominences at their elbow (largest perpendicular
   distance to the chord through the first and last point) and keep tops at
   or above the midpoint threshold; equal prominences keep everything;
3. drop tops whose height falls below ``min(z) + height_floor_fraction *
   range`` (false tops from incidental motion);
4. with more than two surviving tops, flag inter-top gaps longer than
   ``rest_gap_factor`` times the median gap as rests;
5. around each top, scan outward to the nearest local minima: the rise
   start (backswing begin) before it and the impact frame after it, with
   plateaus resolved to the frame nearest the top.

A flagged rest is reported as the inclusive frame interval strictly between
the impact of the trial before the gap and the backswing start of the trial
after it, so trials and rests never overlap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .errors import DataError

DEFAULT_PROMINENCE_FLOOR = 0.05
DEFAULT_HEIGHT_FLOOR = 0.40
DEFAULT_REST_GAP_FACTOR = 1.8


@dataclass(frozen=True)
class SegmentationConfig:
    loose_prominence_floor: float = DEFAULT_PROMINENCE_FLOOR
    height_floor_fraction: float = DEFAULT_HEIGHT_FLOOR
    rest_gap_factor: float = DEFAULT_REST_GAP_FACTOR

    def __post_init__(self):
        if not 0 <= self.loose_prominence_floor < 1:
            raise DataError("loose_prominence_floor must be in [0, 1)")
        if not 0 <= self.height_floor_fraction < 1:
            raise DataError("height_floor_fraction must be in [0, 1)")
        if self.rest_gap_factor <= 1:
            raise DataError("rest_gap_factor must exceed 1")


@dataclass(frozen=True)
class Trial:
    """One strike: rise to the top, then fall to impact (frame indices)."""

    backswing: tuple[int, int]  # [start, top]
    downswing: tuple[int, int]  # [top, impact]

    @property
    def top(self) -> int:
        return self.backswing[1]

    @property
    def start(self) -> int:
        return self.backswing[0]

    @property
    def impact(self) -> int:
        return self.downswing[1]


@dataclass(frozen=True)
class SegmentationResult:
    tops: tuple[int, ...]
    trials: tuple[Trial, ...]
    rests: tuple[tuple[int, int], ...]  # inclusive frame intervals
    prominence_threshold: float

    @property
    def n_trials(self) -> int:
        return len(self.trials)


def detect_candidate_tops(z, floor_fraction: float = DEFAULT_PROMINENCE_FLOOR):
    """Strict local maxima with prominence >= floor_fraction * range.

    Returns (frames, prominences), both ascending in frame order.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise DataError(f"signal must be 1-D, got shape {z.shape}")
    if len(z) < 3:
        raise DataError(f"signal too short to segment ({len(z)} samples)")
    if not np.isfinite(z).all():
        raise DataError("signal contains non-finite values")
    zrange = float(np.ptp(z))
    if zrange == 0:
        return np.empty(0, dtype=int), np.empty(0, dtype=float)
    peaks, props = find_peaks(z, prominence=floor_fraction * zrange)
    return peaks.astype(int), props["prominences"].astype(float)


def prominence_elbow_split(prominences) -> float:
    """Threshold separating real strike tops from incidental maxima.

    Sort prominences descending and find the elbow: the index with the
    largest perpendicular distance to the straight line through the first
    and last point.  The threshold is the midpoint between the elbow value
    and the next one down.  If all prominences are (numerically) equal
    there is no elbow and everything is accepted.
    """
    p = np.sort(np.asarray(prominences, dtype=float))[::-1]
    if p.size == 0:
        raise DataError("no prominences to split")
    if p.size == 1 or np.ptp(p) <= 1e-12 * max(1.0, abs(p[0])):
        return float(p[-1])
    n = len(p)
    dx, dy = float(n - 1), p[-1] - p[0]
    dist = np.abs(dy * np.arange(n) - dx * (p - p[0]))
    k = int(np.argmax(dist))
    if k == n - 1:
        k = n - 2
    return float(0.5 * (p[k] + p[k + 1]))


def _descend(z: np.ndarray, top: int, step: int, bound: int) -> int:
    """Walk from ``top`` in direction ``step`` to the nearest local minimum.

    Stops at the first frame where the signal stops decreasing when scanning
    outward (plateaus resolve to the frame nearest the top) or at ``bound``.
    A flat apex is walked off first so the scan starts on the slope.
    """
    t = top
    while t != bound and z[t + step] == z[top]:
        t += step
    while t != bound and z[t + step] < z[t]:
        t += step
    return t


def segment_phases(z, config: SegmentationConfig | None = None) -> SegmentationResult:
    """Detect strike trials (backswing/downswing frame ranges) and rests."""
    cfg = config or SegmentationConfig()
    z = np.asarray(z, dtype=float)
    frames, proms = detect_candidate_tops(z, cfg.loose_prominence_floor)
    if frames.size == 0:
        raise DataError("no candidate tops found; signal may be flat")

    threshold = prominence_elbow_split(proms)
    keep = proms >= threshold
    frames, proms = frames[keep], proms[keep]

    zmin = float(z.min())
    height_floor = zmin + cfg.height_floor_fraction * float(np.ptp(z))
    tall = z[frames] >= height_floor
    frames = frames[tall]
    if frames.size == 0:
        raise DataError("all candidate tops fall below the height floor")

    rest_gaps: list[int] = []
    if frames.size > 2:
        gaps = np.diff(frames)
        cut = cfg.rest_gap_factor * float(np.median(gaps))
        rest_gaps = [i for i, g in enumerate(gaps) if g > cut]

    trials: list[Trial] = []
    prev_impact = 0
    for i, top in enumerate(frames):
        top = int(top)
        start = _descend(z, top, -1, prev_impact)
        impact_bound = int(frames[i + 1]) if i + 1 < frames.size else len(z) - 1
        impact = _descend(z, top, +1, impact_bound)
        trials.append(Trial(backswing=(start, top), downswing=(top, impact)))
        prev_impact = impact

    # a rest spans the frames claimed by neither adjacent trial
    rests = []
    for i in rest_gaps:
        a, b = trials[i].impact + 1, trials[i + 1].start - 1
        if a <= b:
            rests.append((a, b))

    return SegmentationResult(
        tops=tuple(int(f) for f in frames),
        trials=tuple(trials),
        rests=tuple(rests),
        prominence_threshold=threshold,
    )


def phase_windows(seg: SegmentationResult, phase: str) -> list[tuple[int, int]]:
    """Half-open speed-sample windows for one movement phase.

    Frame interval [a, b] of positions covers speed samples a..b-1, so both
    phases map to the half-open range (start, top) / (top, impact).
    """
    if phase == "backswing":
        return [(t.start, t.top) for t in seg.trials]
    if phase == "downswing":
        return [(t.top, t.impact) for t in seg.trials]
    raise DataError(f"phase must be 'backswing' or 'downswing', got {phase!r}")
