"""Complex PCA of analytic signal matrices, with a circular-shift null test.

Orientation
-----------
The complex correlation is ``C[i, j] = mean_t(z_i(t) * conj(z_j(t)))``, so a
positive phase of ``C[i, j]`` means variable *i* leads variable *j*; with a
pure tone delayed by a quarter period in column *j*, ``C[i, j] ~ e^{+j pi/2}``.
Mode phases inherit the same convention: a larger phase leads.

Gauge
-----
Eigenvectors are defined up to a global complex phase.  Every solver path
canonicalizes by rotating the largest-amplitude entry to the positive real
axis; reporting paths additionally rotate so a chosen reference variable
sits at exactly zero phase (``align_to_reference``).

Significance
------------
``rrs_test`` circularly shifts each column independently by a uniform random
offset, which preserves every column's spectral magnitudes exactly while
destroying cross-column alignment.  Per mode, the observed eigenvalue is
compared against an order-statistic threshold of the shuffled eigenvalues.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticMatrix, build_analytic_matrix, normalize_windows
from .errors import DataError, DegeneracyError, ShapeError, UndefinedReferenceError
from .io_model import _freeze
from .kinematics import SpeedSeries
from .stats import spearman, wrap_angle

HERMITIAN_ATOL = 1e-12
NEGATIVE_EIG_ATOL = 1e-9
REFERENCE_AMP_EPS = 1e-12


def complex_correlation(z: np.ndarray) -> np.ndarray:
    """N x N complex correlation of a (T, N) analytic matrix.

    With standardized columns the diagonal is 1 and the matrix is Hermitian
    positive semidefinite with trace N.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2:
        raise ShapeError(f"expected a (T, N) matrix, got {z.shape}")
    t, n = z.shape
    if t < 2 or n < 2:
        raise DataError(f"need T >= 2 and N >= 2, got {z.shape}")
    c = (z.T @ np.conj(z)) / t
    return 0.5 * (c + np.conj(c.T))


@dataclass(frozen=True)
class ComplexMode:
    """One eigenmode: eigenvalue, share of total variance, unit eigenvector."""

    index: int  # 1-based mode number
    eigenvalue: float
    contribution: float
    vector: np.ndarray  # (N,) complex, unit norm, canonical gauge

    def __post_init__(self):
        object.__setattr__(
            self, "vector", _freeze(np.asarray(self.vector, dtype=complex))
        )

    @property
    def hodge(self) -> np.ndarray:
        """Per-variable phase of the eigenvector, in (-pi, pi]."""
        return wrap_angle(np.angle(self.vector))

    @property
    def amplitude(self) -> np.ndarray:
        """Per-variable modulus of the eigenvector."""
        return np.abs(self.vector)


def canonicalize_gauge(vector: np.ndarray) -> np.ndarray:
    """Rotate a complex vector so its largest-amplitude entry is real > 0."""
    vector = np.asarray(vector, dtype=complex)
    amp = np.abs(vector)
    k = int(np.argmax(amp))
    if amp[k] == 0:
        return vector.copy()
    rotated = vector * (np.conj(vector[k]) / amp[k])
    rotated[k] = amp[k]
    return rotated


def _check_hermitian(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ShapeError(f"expected a square matrix, got {c.shape}")
    scale = max(1.0, float(np.abs(c).max()))
    if float(np.abs(c - np.conj(c.T)).max()) > HERMITIAN_ATOL * scale:
        raise DataError("matrix is not Hermitian within tolerance")
    return 0.5 * (c + np.conj(c.T))


def _finish_eigenvalues(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Clamp tiny negatives, validate PSD, return (eigenvalues, contributions)."""
    w = np.asarray(w, dtype=float)
    floor = -NEGATIVE_EIG_ATOL * max(1.0, float(w.max(initial=0.0)))
    if w.min(initial=0.0) < floor:
        raise DegeneracyError(
            f"matrix has negative eigenvalue {w.min():.3e}; not a correlation matrix"
        )
    w = np.clip(w, 0.0, None)
    total = float(w.sum())
    if total == 0.0:
        raise DegeneracyError("all eigenvalues are zero")
    return w, w / total


def eig_hermitian(c: np.ndarray) -> list[ComplexMode]:
    """All eigenmodes of a Hermitian PSD matrix, eigenvalues descending."""
    ch = _check_hermitian(c)
    w, v = np.linalg.eigh(ch)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    w, contrib = _finish_eigenvalues(w)
    return [
        ComplexMode(k + 1, float(w[k]), float(contrib[k]), canonicalize_gauge(v[:, k]))
        for k in range(len(w))
    ]


def eig_hermitian_real_embedding(c: np.ndarray) -> list[ComplexMode]:
    """Same spectrum as ``eig_hermitian`` via a 2N x 2N real-symmetric solve.

    ``C = A + iB`` embeds as ``[[A, -B], [B, A]]``; each complex eigenpair
    appears twice (``u`` and ``i u`` give two real eigenvectors), so pairs are
    deduplicated and complex vectors reconstructed from the real ones.
    """
    ch = _check_hermitian(c)
    n = ch.shape[0]
    a, b = ch.real, ch.imag
    m = np.block([[a, -b], [b, a]])
    w2, v2 = np.linalg.eigh(m)
    order = np.argsort(w2)[::-1]
    w2, v2 = w2[order], v2[:, order]

    # Group (nearly) equal eigenvalues into even-sized blocks; each block of
    # size 2m contributes m complex modes.
    tol = 1e-10 * max(1.0, float(np.abs(w2).max()))
    blocks: list[list[int]] = []
    cur = [0]
    for i in range(1, 2 * n):
        if abs(w2[i] - w2[cur[0]]) <= tol or len(cur) % 2 == 1:
            cur.append(i)
        else:
            blocks.append(cur)
            cur = [i]
    blocks.append(cur)

    vectors: list[np.ndarray] = []
    values: list[float] = []
    for block in blocks:
        basis = v2[:, block]
        for _ in range(len(block) // 2):
            u = basis[:n, 0] + 1j * basis[n:, 0]
            u = u / np.linalg.norm(u)
            vectors.append(u)
            # remove span{[p;q], [-q;p]} of the picked mode, re-orthonormalize
            p, q = u.real, u.imag
            pair = np.stack([np.concatenate([p, q]), np.concatenate([-q, p])], axis=1)
            basis = basis - pair @ (pair.T @ basis)
            if basis.shape[1] > 2:
                left, _, _ = np.linalg.svd(basis, full_matrices=False)
                basis = left[:, : basis.shape[1] - 2]
            else:
                basis = basis[:, :0]
        values.extend(w2[block[0::2]].tolist())

    w = np.asarray(values, dtype=float)
    order = np.argsort(w)[::-1]
    w = w[order]
    vectors = [vectors[i] for i in order]
    w, contrib = _finish_eigenvalues(w)
    return [
        ComplexMode(k + 1, float(w[k]), float(contrib[k]), canonicalize_gauge(vectors[k]))
        for k in range(n)
    ]


def align_mode(mode: ComplexMode, ref_index: int) -> ComplexMode:
    """Rotate a mode's gauge so the reference variable has exactly zero phase."""
    v = mode.vector
    ref = v[ref_index]
    if np.abs(ref) <= REFERENCE_AMP_EPS:
        raise UndefinedReferenceError(
            f"reference variable {ref_index} has ~zero amplitude; phase undefined"
        )
    rotated = v * (np.conj(ref) / np.abs(ref))
    rotated[ref_index] = np.abs(ref)
    return ComplexMode(mode.index, mode.eigenvalue, mode.contribution, rotated)


@dataclass(frozen=True)
class RrsReport:
    """Null thresholds from rotational (circular-shift) shuffling."""

    n_shuffles: int
    percentile: float
    seed: int
    observed: np.ndarray  # (N,) eigenvalues, descending
    thresholds: np.ndarray  # (N,) per-mode order-statistic thresholds
    null_mean: np.ndarray
    null_sd: np.ndarray
    significant_modes: tuple[int, ...]  # 1-based, observed > threshold

    def __post_init__(self):
        for name in ("observed", "thresholds", "null_mean", "null_sd"):
            object.__setattr__(self, name, _freeze(np.asarray(getattr(self, name), float)))
        object.__setattr__(self, "significant_modes", tuple(int(i) for i in self.significant_modes))


def _spectrum_descending(z: np.ndarray) -> np.ndarray:
    """Eigenvalues of the complex correlation of z, descending, length N.

    Uses whichever Gram product (N x N or T x T) is smaller; the nonzero
    spectra coincide and the rank cannot exceed min(T, N).
    """
    t, n = z.shape
    if n <= t:
        w = np.linalg.eigvalsh((z.T @ np.conj(z)) / t)[::-1]
    else:
        w = np.linalg.eigvalsh((z @ np.conj(z.T)) / t)[::-1]
        w = np.concatenate([w, np.zeros(n - t)])
    return np.clip(w, 0.0, None)


def _shuffled_spectra(z: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Eigenvalue spectra for a chunk of per-column circular shifts."""
    t, n = z.shape
    s = shifts.shape[0]
    # shifted[i] = z[(i - s) % t]: same delay convention as np.roll(z, s)
    idx = (np.arange(t)[None, :, None] - shifts[:, None, :]) % t
    zs = z[idx, np.arange(n)[None, None, :]]
    if n <= t:
        c = np.einsum("sti,stj->sij", zs, np.conj(zs)) / t
    else:
        c = zs @ np.conj(np.swapaxes(zs, 1, 2)) / t
    w = np.linalg.eigvalsh(c)[:, ::-1]
    if n > t:
        w = np.concatenate([w, np.zeros((s, n - t))], axis=1)
    return np.clip(w, 0.0, None)


def rrs_threshold_index(n_shuffles: int, percentile: float) -> int:
    """Index into the ascending null sample for the percentile threshold."""
    if not (0.0 < percentile < 100.0):
        raise DataError(f"percentile must be in (0, 100), got {percentile}")
    return min(n_shuffles - 1, math.ceil(percentile / 100.0 * n_shuffles))


def rrs_test(
    z,
    n_shuffles: int = 1000,
    percentile: float = 99.0,
    seed: int | None = None,
    chunk: int | None = None,
    threads: int = 1,
) -> RrsReport:
    """Rotational-shuffle significance test for eigenmodes.

    Each shuffle circularly shifts every column of ``z`` by an independent
    uniform offset in ``{0, ..., T-1}`` and records the eigenvalue spectrum of
    the shuffled correlation matrix.  Per mode k, the threshold is the
    ``ceil(percentile/100 * n_shuffles)``-indexed order statistic of the null
    sample (ascending, 0-based; at 99%/1000 this is the 10th-largest value),
    and mode k is significant when its observed eigenvalue strictly exceeds it.

    All shift offsets derive from ``seed`` up front, so chunking and thread
    count cannot change the result.
    """
    if isinstance(z, AnalyticMatrix):
        z = z.values
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2:
        raise ShapeError(f"expected a (T, N) matrix, got {z.shape}")
    if n_shuffles < 1:
        raise DataError(f"n_shuffles must be >= 1, got {n_shuffles}")
    if seed is None:
        raise DataError("rrs_test needs an explicit seed")
    t, n = z.shape
    observed = _spectrum_descending(z)

    rng = np.random.Generator(np.random.Philox(key=seed))
    shifts = rng.integers(0, t, size=(n_shuffles, n))

    if chunk is None:
        per_shuffle = 16 * t * n + 16 * min(t, n) ** 2
        chunk = max(1, min(n_shuffles, int(2.0e8 / per_shuffle)))
    starts = list(range(0, n_shuffles, chunk))
    null = np.empty((n_shuffles, n), dtype=float)

    def run_chunk(a: int) -> None:
        b = min(a + chunk, n_shuffles)
        null[a:b] = _shuffled_spectra(z, shifts[a:b])

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_chunk, starts))
    else:
        for a in starts:
            run_chunk(a)

    null_sorted = np.sort(null, axis=0)
    thresholds = null_sorted[rrs_threshold_index(n_shuffles, percentile)]
    significant = tuple(
        int(k + 1) for k in range(n) if observed[k] > thresholds[k]
    )
    return RrsReport(
        n_shuffles=n_shuffles,
        percentile=float(percentile),
        seed=int(seed),
        observed=observed,
        thresholds=thresholds,
        null_mean=null.mean(axis=0),
        null_sd=null.std(axis=0),
        significant_modes=significant,
    )


@dataclass(frozen=True)
class ChpcaResult:
    """Eigenmodes of one analysis segment, plus optional null test."""

    labels: tuple[str, ...]
    windows: tuple[tuple[int, int], ...]
    transform: str
    n_samples: int
    modes: tuple[ComplexMode, ...]
    rrs: RrsReport | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(
            self, "windows", tuple((int(a), int(b)) for a, b in self.windows)
        )

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.asarray([m.eigenvalue for m in self.modes])

    @property
    def contributions(self) -> np.ndarray:
        return np.asarray([m.contribution for m in self.modes])

    @property
    def mode1(self) -> ComplexMode:
        return self.modes[0]

    def index_of(self, label: str) -> int:
        if label not in self.labels:
            raise DataError(f"unknown variable label {label!r}")
        return self.labels.index(label)


def decompose(matrix: AnalyticMatrix, transform: str = "joined") -> ChpcaResult:
    """Eigenmodes of an already-built analytic matrix."""
    c = complex_correlation(matrix.values)
    modes = eig_hermitian(c)
    return ChpcaResult(
        labels=matrix.labels,
        windows=matrix.windows,
        transform=transform,
        n_samples=matrix.n_samples,
        modes=tuple(modes),
    )


def run_chpca(
    speed: SpeedSeries,
    windows=None,
    points=None,
    transform: str = "joined",
    rrs_shuffles: int = 0,
    rrs_percentile: float = 99.0,
    rrs_seed: int | None = None,
    rrs_chunk: int | None = None,
    threads: int = 1,
) -> ChpcaResult:
    """Full decomposition of selected speed columns over analysis windows.

    With ``rrs_shuffles > 0`` a rotational-shuffle report is attached
    (``rrs_seed`` is then required).
    """
    matrix = build_analytic_matrix(speed, windows, points, transform)
    result = decompose(matrix, transform)
    if rrs_shuffles > 0:
        report = rrs_test(
            matrix.values,
            n_shuffles=rrs_shuffles,
            percentile=rrs_percentile,
            seed=rrs_seed,
            chunk=rrs_chunk,
            threads=threads,
        )
        result = ChpcaResult(
            labels=result.labels,
            windows=result.windows,
            transform=result.transform,
            n_samples=result.n_samples,
            modes=result.modes,
            rrs=report,
        )
    return result


def align_to_reference(
    result: ChpcaResult, reference: str | int, required: int = 1
) -> ChpcaResult:
    """Rotate modes so the reference variable has exactly zero phase.

    A mode in which the reference variable is silent (amplitude ~ 0) keeps
    its canonical gauge: phases relative to a variable the mode does not use
    are meaningless.  The first ``required`` modes must be alignable; a
    silent reference there raises :class:`UndefinedReferenceError`.
    """
    ref = result.index_of(reference) if isinstance(reference, str) else int(reference)
    if not 0 <= ref < len(result.labels):
        raise DataError(f"reference index {ref} out of range")
    modes = []
    for k, mode in enumerate(result.modes):
        if np.abs(mode.vector[ref]) > REFERENCE_AMP_EPS:
            modes.append(align_mode(mode, ref))
        elif k < required:
            raise UndefinedReferenceError(
                f"reference {result.labels[ref]!r} has ~zero amplitude "
                f"in mode {k + 1}; phase undefined"
            )
        else:
            modes.append(mode)
    return ChpcaResult(
        labels=result.labels,
        windows=result.windows,
        transform=result.transform,
        n_samples=result.n_samples,
        modes=tuple(modes),
        rrs=result.rrs,
    )


@dataclass(frozen=True)
class TrialEnsemble:
    """Across-trial summary of per-trial first modes, phase-aligned."""

    labels: tuple[str, ...]
    reference: str
    hodges: np.ndarray  # (n_trials, N) aligned mode-1 phases
    amplitudes: np.ndarray  # (n_trials, N)
    contributions: np.ndarray  # (n_trials,) mode-1 share per trial
    mean_hodge: np.ndarray  # (N,) circular mean across trials
    resultant: np.ndarray  # (N,) inter-trial resultant length
    consistency: float | None  # mean pairwise Spearman of hodge vectors

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        for name in ("hodges", "amplitudes", "contributions", "mean_hodge", "resultant"):
            object.__setattr__(self, name, _freeze(np.asarray(getattr(self, name), float)))

    @property
    def n_trials(self) -> int:
        return self.hodges.shape[0]


def run_chpca_per_trial(
    speed: SpeedSeries,
    windows,
    points=None,
    transform: str = "joined",
) -> list[ChpcaResult]:
    """Independent decomposition of each window (one per trial)."""
    wins = normalize_windows(windows, speed.n_samples)
    return [run_chpca(speed, [w], points, transform) for w in wins]


def ensemble_average(results: list[ChpcaResult], reference: str) -> TrialEnsemble:
    """Combine per-trial first modes into across-trial phase statistics.

    Each trial's first mode is aligned to the reference variable, then each
    variable's phases are averaged circularly across trials; the resultant
    length R measures inter-trial phase stability (R = 1: identical phase
    every trial).  Consistency is the mean pairwise Spearman correlation of
    the aligned phase vectors across trials.
    """
    if not results:
        raise DataError("need at least one trial result")
    labels = results[0].labels
    for r in results[1:]:
        if r.labels != labels:
            raise DataError("trial results have mismatched labels")
    aligned = [align_to_reference(r, reference) for r in results]
    hodges = np.stack([r.mode1.hodge for r in aligned])
    amplitudes = np.stack([r.mode1.amplitude for r in aligned])
    contributions = np.asarray([r.mode1.contribution for r in aligned])

    phasors = np.exp(1j * hodges).mean(axis=0)
    resultant = np.abs(phasors)
    mean_hodge = wrap_angle(np.angle(phasors))
    mean_hodge = np.where(resultant <= 1e-12, 0.0, mean_hodge)

    n = len(aligned)
    if n >= 2:
        rhos = [
            spearman(hodges[i], hodges[j]).rho
            for i in range(n)
            for j in range(i + 1, n)
        ]
        consistency = float(np.mean(rhos))
    else:
        consistency = None
    return TrialEnsemble(
        labels=labels,
        reference=reference if isinstance(reference, str) else labels[int(reference)],
        hodges=hodges,
        amplitudes=amplitudes,
        contributions=contributions,
        mean_hodge=mean_hodge,
        resultant=resultant,
        consistency=consistency,
    )
