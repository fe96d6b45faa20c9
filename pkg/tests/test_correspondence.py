import numpy as np
import pytest

from phasechain import (
    DataError,
    MotionSequence,
    SpeedSeries,
    VelocitySeries,
    amplitude_energy_correlation,
    crp_chpca_agreement,
    crp_matrix,
    energy_phase_matrix,
    matched_pair_values,
    phase_order_reversal,
    run_chpca,
    spearman,
    three_axis_chpca,
    velocity,
    wrap_angle,
)


def _speed(values):
    values = np.asarray(values, dtype=float)
    return SpeedSeries(values, [f"p{i}" for i in range(values.shape[1])], 30.0)


def _coherent_speed(rng, gains, t=400, cycles=10, noise=0.25):
    tt = np.arange(t)
    w = 2 * np.pi * cycles / t
    gains = np.asarray(gains, dtype=float)
    vals = gains[None, :] * np.cos(w * tt[:, None]) + noise * rng.normal(
        size=(t, len(gains))
    )
    return _speed(vals + gains.max() + 5 * noise)


# -------------------------------------------------- amplitude vs energy


def test_amplitude_tracks_energy_variability(rng):
    gains = np.array([0.3, 0.7, 1.2, 1.8, 2.5, 3.3])
    speed = _coherent_speed(rng, gains)
    result = run_chpca(speed)
    evar = (speed.values**2).var(axis=0)
    rep = amplitude_energy_correlation(result.mode1, evar)
    assert rep.rho == 1.0
    assert rep.n == 6


def test_amplitude_energy_global_rescale_invariance(rng):
    gains = np.array([0.3, 0.9, 1.6, 2.4])
    speed = _coherent_speed(rng, gains)
    result = run_chpca(speed)
    evar = (speed.values**2).var(axis=0)
    base = amplitude_energy_correlation(result.mode1, evar)
    scaled_speed = _speed(speed.values * 3.7)
    result2 = run_chpca(scaled_speed)
    evar2 = (scaled_speed.values**2).var(axis=0)
    again = amplitude_energy_correlation(result2.mode1, evar2)
    assert again.rho == pytest.approx(base.rho, abs=1e-12)


def test_amplitude_energy_length_mismatch(rng):
    speed = _coherent_speed(rng, [1.0, 2.0, 3.0])
    result = run_chpca(speed)
    with pytest.raises(DataError):
        amplitude_energy_correlation(result.mode1, np.ones(5))


# ------------------------------------------------------ energy phases


def test_energy_phase_matrix_identical_columns_zero(rng):
    t = np.arange(300)
    col = 2.0 + np.cos(2 * np.pi * 7 * t / 300)
    vals = np.stack([col, col, col], axis=1)
    m = energy_phase_matrix(_speed(vals))
    assert np.max(np.abs(m.values)) < 1e-9


def test_energy_phase_matrix_antisymmetric(rng):
    vals = rng.normal(size=(240, 5)) ** 2 + 0.2
    m = energy_phase_matrix(_speed(vals))
    assert np.max(np.abs(wrap_angle(m.values + m.values.T))) < 1e-12


def test_energy_phase_planted_lags():
    # squared speeds oscillate with known pairwise phase differences
    t = np.arange(600)
    w = 2 * np.pi * 12 / 600
    lags = np.array([0.0, 0.5, 1.1])
    vals = np.sqrt(3.0 + np.cos(w * t[:, None] - lags[None, :]))
    m = energy_phase_matrix(_speed(vals))
    for i in range(3):
        for j in range(3):
            want = wrap_angle(lags[j] - lags[i])  # i peaks earlier -> leads
            assert wrap_angle(m.values[i, j] - want) == pytest.approx(0, abs=0.02)


# ------------------------------------------------------- phase reversal


def test_phase_order_reversal_detects_flip(rng):
    h = rng.uniform(-2.0, 2.0, size=12)
    rep = phase_order_reversal(h, -h + 0.3)
    assert rep.rho == -1.0
    rep2 = phase_order_reversal(h, h * 2 + 1)
    assert rep2.rho == 1.0


# --------------------------------------------------------- pair matching


def test_matched_pair_values_consistent(rng):
    vals = rng.normal(size=(200, 5)) ** 2 + 0.1
    speed = _speed(vals)
    pairs = crp_matrix(speed)
    result = run_chpca(speed)
    pv, mv = matched_pair_values(pairs, result.mode1, result.labels)
    assert len(pv) == len(mv) == 10
    hodge = result.mode1.hodge
    k = 0
    for i in range(5):
        for j in range(i + 1, 5):
            assert pv[k] == pairs.values[i, j]
            assert mv[k] == pytest.approx(wrap_angle(hodge[i] - hodge[j]), abs=1e-12)
            k += 1


def test_matched_pair_label_mismatch(rng):
    vals = rng.normal(size=(100, 4)) ** 2 + 0.1
    speed = _speed(vals)
    pairs = crp_matrix(speed)
    result = run_chpca(speed, points=["p0", "p1", "p3"])
    with pytest.raises(DataError):
        matched_pair_values(pairs, result.mode1, result.labels)


def test_crp_chpca_agreement_coherent_data(rng):
    lags = np.linspace(0.0, 1.8, 8)
    t = np.arange(500)
    w = 2 * np.pi * 10 / 500
    vals = 2.0 + np.cos(w * t[:, None] - lags[None, :]) + 0.05 * rng.normal(
        size=(500, 8)
    )
    speed = _speed(vals)
    pairs = crp_matrix(speed)
    result = run_chpca(speed)
    rep = crp_chpca_agreement(pairs, result.mode1, result.labels, n_perm=2000, seed=0)
    assert rep.rho > 0.99
    assert rep.p_permutation == pytest.approx(1 / 2001, abs=1e-15)
    assert rep.n == 28


# ------------------------------------------------------------ three axis


def _three_axis_motion(theta, t_total=481, noise=2e-4, seed=0):
    """Positions whose z-velocities oscillate with planted per-point phases."""
    n = len(theta)
    rng = np.random.Generator(np.random.Philox(key=seed))
    tt = np.arange(t_total - 1)
    w = 2 * np.pi * 12 / (t_total - 1)
    vz = np.cos(w * tt[:, None] + np.asarray(theta)[None, :])
    vx = noise * rng.normal(size=(t_total - 1, n))
    vy = noise * rng.normal(size=(t_total - 1, n))
    pos = np.zeros((t_total, n, 3))
    for k, v in enumerate((vx, vy, vz)):
        pos[1:, :, k] = np.cumsum(v, axis=0)
    return MotionSequence(pos, [f"p{i}" for i in range(n)], 30.0)


def test_three_axis_recovers_signed_phases():
    # spacing well above the ~0.05 rad perturbation the unit-power noise
    # columns contribute to the amplitude-weighted aggregate
    theta = np.linspace(0.0, 1.4, 8)
    seq = _three_axis_motion(theta)
    vel = velocity(seq)
    res = three_axis_chpca(vel, reference="p0", reference_axis="z")
    assert res.result.labels == tuple(
        f"p{i}_{ax}" for i in range(8) for ax in ("x", "y", "z")
    )
    z_cols = [res.result.labels.index(f"p{i}_z") for i in range(8)]
    hz = res.result.mode1.hodge[z_cols]
    # later positive phase offset theta means earlier peak: hodge = theta - theta0
    assert np.max(np.abs(wrap_angle(hz - (theta - theta[0])))) < 1e-3
    # z-axis carries the signal: 8 coherent columns of 24 total
    assert res.result.mode1.contribution == pytest.approx(8 / 24, abs=0.02)
    # aggregated per-point phases follow the same ordering
    assert spearman(res.aggregated_phase, theta).rho == 1.0


def test_speed_norm_folds_sign_three_axis_does_not():
    # |cos| oscillates at twice the frequency; the signed decomposition keeps
    # the planted ordering while the folded one doubles phase differences
    from phasechain import speed_norm

    theta = np.linspace(0.0, np.pi / 8, 8)
    seq = _three_axis_motion(theta, noise=1e-3)
    vel = velocity(seq)
    speed = speed_norm(vel)
    folded = run_chpca(speed)
    signed = three_axis_chpca(vel, reference="p0", reference_axis="z")
    z_cols = [signed.result.labels.index(f"p{i}_z") for i in range(8)]
    hz = signed.result.mode1.hodge[z_cols]
    hf = folded.mode1.hodge
    d_signed = wrap_angle(hz - hz[0])
    d_folded = wrap_angle(hf - hf[0])
    # folded differences ~ 2x signed differences (sign folding doubles phase)
    resid = np.max(np.abs(wrap_angle(np.abs(d_folded) - 2 * np.abs(d_signed))))
    assert resid < 0.08
    assert abs(spearman(np.abs(d_folded), np.abs(d_signed)).rho) == 1.0


def test_three_axis_reference_validation(rng):
    seq = _three_axis_motion(np.linspace(0, 1, 4))
    vel = velocity(seq)
    with pytest.raises(DataError):
        three_axis_chpca(vel, reference="nope")
    with pytest.raises(DataError):
        three_axis_chpca(vel, reference="p0", reference_axis="w")


def test_three_axis_velocity_series_required():
    with pytest.raises((DataError, AttributeError, TypeError)):
        three_axis_chpca(np.zeros((10, 3)))
