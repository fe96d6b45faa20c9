"""Rank correlation and circular statistics helpers.

Conventions fixed here and relied on everywhere else:

* angles are wrapped to the half-open interval (-pi, pi], with the branch
  boundary mapped to +pi;
* Spearman correlation is the Pearson correlation of average ranks, with a
  two-sided p-value from the t approximation on n-2 degrees of freedom;
* permutation p-values use the add-one rule
  ``(1 + #{|rho*| >= |rho_obs|}) / (1 + n_perm)``, so the smallest
  reachable p with 2000 permutations is 1/2001.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata
from scipy.stats import t as t_dist

from .errors import DataError, DegeneracyError

TWO_PI = 2.0 * np.pi

#: resultant lengths at or below this are treated as undefined mean directions
RESULTANT_EPS = 1e-12


def wrap_angle(a):
    """Wrap angle(s) to (-pi, pi]; the -pi boundary maps to +pi."""
    a = np.asarray(a, dtype=float)
    w = np.mod(a + np.pi, TWO_PI) - np.pi
    w = np.where(w == -np.pi, np.pi, w)
    return w if w.ndim else float(w)


@dataclass(frozen=True)
class CircularMean:
    mean: float
    resultant: float
    degenerate: bool


def circular_mean_resultant(angles) -> CircularMean:
    """Mean direction and resultant length R of a set of angles.

    R is the modulus of the average unit phasor; R ~ 0 means the directions
    cancel and the mean is undefined, reported as 0 with ``degenerate=True``.
    """
    angles = np.asarray(angles, dtype=float)
    if angles.size == 0:
        raise DataError("need at least one angle")
    m = np.exp(1j * angles).mean()
    r = float(np.abs(m))
    if r <= RESULTANT_EPS:
        return CircularMean(0.0, 0.0, True)
    return CircularMean(float(wrap_angle(np.angle(m))), r, False)


@dataclass(frozen=True)
class CorrelationReport:
    rho: float
    p_asymptotic: float
    n: int
    p_permutation: float | None = None
    n_perm: int = 0
    seed: int | None = None


def _ranks(x: np.ndarray) -> np.ndarray:
    return rankdata(x, method="average")


def _rank_pearson(rx: np.ndarray, ry: np.ndarray) -> float:
    sx, sy = rx.std(), ry.std()
    if sx == 0 or sy == 0:
        raise DegeneracyError("rank variance is zero; correlation undefined")
    rho = float(np.mean((rx - rx.mean()) * (ry - ry.mean())) / (sx * sy))
    return min(1.0, max(-1.0, rho))


def spearman(x, y) -> CorrelationReport:
    """Spearman rank correlation with asymptotic two-sided p-value."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or y.ndim != 1 or len(x) != len(y):
        raise DataError("spearman needs two equal-length 1-D samples")
    n = len(x)
    if n < 3:
        raise DataError(f"spearman needs n >= 3, got {n}")
    rho = _rank_pearson(_ranks(x), _ranks(y))
    if abs(rho) == 1.0:
        p = 0.0
    else:
        t = rho * np.sqrt((n - 2) / (1.0 - rho * rho))
        p = float(2.0 * t_dist.sf(abs(t), n - 2))
    return CorrelationReport(rho=rho, p_asymptotic=p, n=n)


def permutation_p(x, y, n_perm: int, seed: int) -> CorrelationReport:
    """Spearman report augmented with a two-sided permutation p-value.

    One side (y) is permuted ``n_perm`` times with a counter-based RNG keyed
    by ``seed``; draw ``i`` depends only on ``(seed, i)``, so results do not
    depend on execution order.  The permuted statistic goes through the same
    code path as the observed one, so exact ties count as hits.
    """
    if n_perm < 1:
        raise DataError(f"n_perm must be >= 1, got {n_perm}")
    base = spearman(x, y)
    rx = _ranks(np.asarray(x, dtype=float))
    ry = _ranks(np.asarray(y, dtype=float))
    hits = 0
    for i in range(n_perm):
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(i))
        perm = rng.permutation(len(ry))
        if abs(_rank_pearson(rx, ry[perm])) >= abs(base.rho):
            hits += 1
    p_perm = (1.0 + hits) / (1.0 + n_perm)
    return CorrelationReport(
        rho=base.rho,
        p_asymptotic=base.p_asymptotic,
        n=base.n,
        p_permutation=p_perm,
        n_perm=n_perm,
        seed=seed,
    )
