import numpy as np
import pytest

from matris.channel import C_LIGHT, SystemParams, snr, snr_upper_bound, to_db
from matris.geometry import build_tris_grid
from matris.phase import aligned_phases, phase_set, propagation_phases, quantize


def test_phase_set_b1():
    np.testing.assert_allclose(phase_set(1), [0.0, np.pi])


def test_phase_set_b2():
    np.testing.assert_allclose(phase_set(2), [0.0, np.pi / 2, np.pi, 3 * np.pi / 2])


def test_phase_set_b3():
    values = phase_set(3)
    assert len(values) == 8
    np.testing.assert_allclose(np.diff(values), np.pi / 4)
    assert values[0] == 0.0


def test_phase_set_range():
    for bad in (0, 17, -1):
        with pytest.raises(ValueError):
            phase_set(bad)
    assert len(phase_set(16)) == 2**16


def test_quantize_examples():
    s2 = phase_set(2)
    # circular distance to pi/2 is ~0.771, beating 0.8 to zero
    assert quantize(0.8, s2) == pytest.approx(np.pi / 2)
    # exact tie between 0 and pi resolves to the smaller value
    assert quantize(np.pi / 2, phase_set(1)) == 0.0
    # wraparound: 6.2 is ~0.083 rad short of 2pi, so it projects to 0
    assert quantize(6.2, s2) == 0.0


def test_quantize_idempotent():
    rng = np.random.default_rng(0)
    for b in (1, 2, 4):
        s = phase_set(b)
        phi = rng.uniform(-10, 10, 200)
        q = quantize(phi, s)
        np.testing.assert_allclose(quantize(q, s), q)


def test_quantize_mod_2pi_invariance():
    rng = np.random.default_rng(1)
    s = phase_set(3)
    phi = rng.uniform(0, 2 * np.pi, 100)
    k = rng.integers(-5, 6, 100)
    np.testing.assert_allclose(
        quantize(phi + 2 * np.pi * k, s), quantize(phi, s), atol=1e-9
    )


def test_quantize_residual_bound():
    rng = np.random.default_rng(2)
    for b in (1, 2, 3, 5):
        s = phase_set(b)
        phi = rng.uniform(0, 2 * np.pi, 500)
        q = quantize(phi, s)
        resid = np.abs((phi - q + np.pi) % (2 * np.pi) - np.pi)
        assert np.all(resid <= np.pi / 2**b + 1e-12)


def test_aligned_continuous_reaches_bound(params15):
    g = build_tris_grid(6, 0.0075)
    rng = np.random.default_rng(3)
    for _ in range(10):
        t = np.array([rng.uniform(-0.075, 0.075), rng.uniform(-0.075, 0.075), -0.5])
        cfg = aligned_phases(t, g, params15, None)
        assert cfg.bits is None
        assert snr(t, cfg.phases, g, params15) == pytest.approx(
            snr_upper_bound(t, g, params15), rel=1e-12
        )


def test_aligned_b1_exact_multiple_of_wavelength():
    # d_T + d_R = 1.0 m = 100 wavelengths at lambda = 0.01 -> phase 0
    params = SystemParams(
        carrier_frequency=C_LIGHT / 0.01, user_position=np.array([0.0, 0.0, 0.5])
    )
    g = build_tris_grid(1, 0.005)
    cfg = aligned_phases(np.array([0.0, 0.0, -0.5]), g, params, 1)
    assert cfg.phases[0] == 0.0


def test_aligned_quantized_residuals_bounded(params15):
    g = build_tris_grid(2, 0.0075)
    rng = np.random.default_rng(4)
    for _ in range(10):
        t = np.array([rng.uniform(-0.075, 0.075), rng.uniform(-0.075, 0.075), -0.5])
        cfg = aligned_phases(t, g, params15, 2)
        ideal = propagation_phases(t, g, params15)
        psi = (cfg.phases - ideal + np.pi) % (2 * np.pi) - np.pi
        assert np.all(np.abs(psi) <= np.pi / 4 + 1e-12)


def test_quantized_snr_floor(params15):
    g = build_tris_grid(8, 0.0075)
    rng = np.random.default_rng(5)
    for b in (1, 2, 3, 4):
        floor = np.cos(np.pi / 2**b) ** 2
        for _ in range(25):
            t = np.array([rng.uniform(-0.075, 0.075), rng.uniform(-0.075, 0.075), -0.5])
            cfg = aligned_phases(t, g, params15, b)
            assert snr(t, cfg.phases, g, params15) >= floor * snr_upper_bound(
                t, g, params15
            ) * (1 - 1e-12)


def test_mean_snr_statistically_nondecreasing_in_bits(params15):
    g = build_tris_grid(6, 0.0075)
    rng = np.random.default_rng(6)
    points = [
        np.array([rng.uniform(-0.075, 0.075), rng.uniform(-0.075, 0.075), -0.5])
        for _ in range(120)
    ]
    means = []
    for b in (1, 2, 3, 4):
        vals = [snr(t, aligned_phases(t, g, params15, b).phases, g, params15) for t in points]
        means.append(np.mean(vals))
    assert all(b2 >= b1 for b1, b2 in zip(means, means[1:]))
