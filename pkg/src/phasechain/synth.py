"""Synthetic generators with closed-form ground truth.

``gen_phase_lagged_speeds`` builds speed-like signals whose phase structure
is known exactly: a shared oscillation with per-point lags and amplitudes,
optionally a second oscillation at a different exact-bin frequency whose
spatial pattern is orthogonal to the first (so the two planted modes stay
analytically separable), plus Gaussian noise.  The frequencies sit on exact
FFT bins of the window, which makes the expected eigenstructure exact rather
than asymptotic: with ``mode2_fraction = m`` the standardized correlation
matrix has eigenvalues ``N(1-m), N m, 0, ...`` and first-mode phases equal to
``-lag`` per point.

``gen_strike_sequence`` builds a strike-like height signal: asymmetric
triangular pulses (slow rise, fast fall) at a fixed peak height with known
rise/fall boundaries, optional flat rest block, and seedable jitter on the
per-strike durations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError
from .segmentation import Trial


@dataclass(frozen=True)
class OscillatorSpec:
    """Planted phase-lag oscillation shared by N points."""

    n_points: int
    n_samples: int
    base_cycles: int  # cycles of the shared oscillation over the window
    lags: tuple[float, ...]  # per-point phase lag (radians); larger peaks later
    amplitudes: tuple[float, ...]
    mode2_fraction: float = 0.0  # share of oscillatory energy in the 2nd mode
    noise_sd: float = 0.0
    offset: float | None = None  # None: auto-pick a floor that keeps s >= 0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lags", tuple(float(v) for v in self.lags))
        object.__setattr__(self, "amplitudes", tuple(float(v) for v in self.amplitudes))
        if self.n_points < 2:
            raise DataError("need at least 2 points")
        if len(self.lags) != self.n_points or len(self.amplitudes) != self.n_points:
            raise DataError("lags and amplitudes must have n_points entries")
        if min(self.amplitudes) <= 0:
            raise DataError("amplitudes must be positive")
        if not 0.0 <= self.mode2_fraction < 1.0:
            raise DataError("mode2_fraction must be in [0, 1)")
        if self.noise_sd < 0:
            raise DataError("noise_sd must be >= 0")
        if not 1 <= self.base_cycles:
            raise DataError("base_cycles must be >= 1")
        if self.second_cycles() >= self.n_samples // 2:
            raise DataError(
                "n_samples too short for the second-mode frequency; "
                f"need > {2 * self.second_cycles()} samples"
            )

    def second_cycles(self) -> int:
        """Exact-bin frequency of the second mode (distinct from the base)."""
        return 2 * self.base_cycles + 3

    def expected_contributions(self) -> tuple[float, float]:
        """Noiseless mode-1 and mode-2 shares of total variance."""
        return 1.0 - self.mode2_fraction, self.mode2_fraction


def gen_phase_lagged_speeds(spec: OscillatorSpec) -> np.ndarray:
    """Synthesize (n_samples, n_points) non-negative speed-like signals."""
    t = np.arange(spec.n_samples)
    lags = np.asarray(spec.lags)
    amps = np.asarray(spec.amplitudes)
    w1 = 2.0 * np.pi * spec.base_cycles / spec.n_samples
    share1 = np.sqrt(1.0 - spec.mode2_fraction)
    vals = share1 * amps[None, :] * np.cos(w1 * t[:, None] - lags[None, :])
    if spec.mode2_fraction > 0.0:
        w2 = 2.0 * np.pi * spec.second_cycles() / spec.n_samples
        # second spatial pattern: phases stepped by 2*pi/N relative to the
        # first, which makes the two complex patterns exactly orthogonal
        lags2 = lags + 2.0 * np.pi * np.arange(spec.n_points) / spec.n_points
        vals = vals + np.sqrt(spec.mode2_fraction) * amps[None, :] * np.cos(
            w2 * t[:, None] - lags2[None, :]
        )
    if spec.noise_sd > 0.0:
        rng = np.random.Generator(np.random.Philox(key=spec.seed))
        vals = vals + spec.noise_sd * rng.standard_normal(vals.shape)
    if spec.offset is None:
        trough = np.sqrt(1.0 - spec.mode2_fraction) + np.sqrt(spec.mode2_fraction)
        offset = float(amps.max() * trough + 6.0 * spec.noise_sd)
    else:
        offset = float(spec.offset)
    vals = vals + offset
    if vals.min() < 0:
        raise DataError(
            f"offset {offset} leaves negative values (min {vals.min():.3g}); "
            "increase offset or reduce noise"
        )
    return vals


@dataclass(frozen=True)
class StrikePlan:
    """A generated strike signal together with its planted segmentation."""

    z: np.ndarray
    trials: tuple[Trial, ...]
    rest: tuple[int, int] | None  # planted flat block (inclusive frames)

    @property
    def tops(self) -> tuple[int, ...]:
        return tuple(t.top for t in self.trials)


def gen_strike_sequence(
    n_strikes: int,
    rise: int = 30,
    fall: int = 15,
    height: float = 1.0,
    rest_after: int | None = None,
    rest_len: int = 0,
    lead_in: int = 0,
    jitter: float = 0.0,
    seed: int = 0,
) -> StrikePlan:
    """Concatenated asymmetric triangle pulses with known boundaries.

    Each strike rises over ``rise`` frames and falls over ``fall`` frames
    (slow rise, fast fall).  ``jitter`` perturbs each strike's durations by a
    uniform relative factor; peak heights stay fixed so all tops have equal
    prominence.  With ``rest_after = k``, ``rest_len`` flat frames follow
    strike k (1-based).
    """
    if n_strikes < 1:
        raise DataError("need at least one strike")
    if rise < 2 or fall < 2:
        raise DataError("rise and fall must each span at least 2 frames")
    if not 0.0 <= jitter < 0.5:
        raise DataError("jitter must be in [0, 0.5)")
    if rest_after is not None and not 1 <= rest_after <= n_strikes:
        raise DataError("rest_after must be a 1-based strike index")
    if rest_after is not None and rest_len < 1:
        raise DataError("rest_len must be >= 1 when rest_after is set")
    if height <= 0:
        raise DataError("height must be positive")

    rng = np.random.Generator(np.random.Philox(key=seed))
    pieces = [np.zeros(lead_in)] if lead_in else []
    trials: list[Trial] = []
    rest: tuple[int, int] | None = None
    cursor = lead_in
    for k in range(n_strikes):
        b = max(2, int(round(rise * (1.0 + jitter * rng.uniform(-1.0, 1.0)))))
        d = max(2, int(round(fall * (1.0 + jitter * rng.uniform(-1.0, 1.0)))))
        up = np.linspace(0.0, height, b + 1)
        down = np.linspace(height, 0.0, d + 1)
        # the apex frame is shared between up and down; the final 0 is shared
        # with whatever follows (next rise, rest, or tail)
        pieces.append(up[:-1])
        pieces.append(down[:-1])
        start, top, impact = cursor, cursor + b, cursor + b + d
        trials.append(Trial(backswing=(start, top), downswing=(top, impact)))
        cursor = impact
        if rest_after is not None and k + 1 == rest_after and k + 1 < n_strikes:
            pieces.append(np.zeros(rest_len))
            # the first and last flat frames double as the adjacent trials'
            # impact / backswing-start, so the rest proper is the interior
            if rest_len >= 2:
                rest = (cursor + 1, cursor + rest_len - 1)
            cursor += rest_len
    pieces.append(np.zeros(1))  # final impact frame at the baseline
    z = np.concatenate(pieces)
    return StrikePlan(z=z, trials=tuple(trials), rest=rest)
