import numpy as np
import pytest

from matris.channel import (
    C_LIGHT,
    SingularGeometryError,
    SystemParams,
    cascaded_sum,
    dbm_to_watts,
    kappa,
    rx_coefficients,
    snr,
    snr_upper_bound,
    to_db,
    tx_coefficients,
    watts_to_dbm,
)
from matris.geometry import TrisGeometry, build_tris_grid
from matris.phase import aligned_phases

from conftest import LAM


def single_element():
    return build_tris_grid(1, 0.0075)


def test_tx_coefficient_single_element(params15):
    t = np.array([0.0, 0.0, -0.5])
    f = tx_coefficients(t, single_element(), params15)
    assert abs(f[0]) == pytest.approx(np.sqrt(LAM / (4 * np.pi)) / 0.5, rel=1e-12)
    # 0.5 / 0.015 = 33 + 1/3 cycles -> phase -2pi/3
    assert np.angle(f[0]) == pytest.approx(-2 * np.pi / 3, abs=1e-9)


def test_tx_magnitude_inverse_distance(params15):
    g = single_element()
    m1 = abs(tx_coefficients([0, 0, -0.5], g, params15)[0])
    m2 = abs(tx_coefficients([0, 0, -1.0], g, params15)[0])
    assert m1 == pytest.approx(2 * m2, rel=1e-12)


def test_tx_boresight_mirror_symmetry(params15):
    g = build_tris_grid(4, 0.0075)
    f = tx_coefficients([0, 0, -0.5], g, params15)
    # x-mirror pairs carry identical coefficients
    for n, e in enumerate(g.elements):
        mirrored = np.array([-e[0], e[1], 0.0])
        m = np.argmin(np.linalg.norm(g.elements - mirrored, axis=1))
        assert f[n] == pytest.approx(f[m], rel=1e-12)


def test_rx_coefficient_magnitude(params15):
    g = single_element()
    gvec = rx_coefficients(g, params15)
    assert abs(gvec[0]) == pytest.approx(np.sqrt(LAM / (4 * np.pi)) / 50.0, rel=1e-12)


def test_rx_boresight_mirror_symmetry(params15):
    g = build_tris_grid(4, 0.0075)
    mags = np.abs(rx_coefficients(g, params15))
    for n, e in enumerate(g.elements):
        m = np.argmin(np.linalg.norm(g.elements - e * [-1, -1, 1], axis=1))
        assert mags[n] == pytest.approx(mags[m], rel=1e-12)


def test_singular_geometry(params15):
    g = single_element()
    with pytest.raises(SingularGeometryError):
        tx_coefficients([0.0, 0.0, 0.0], g, params15)
    bad = SystemParams(
        carrier_frequency=params15.carrier_frequency,
        user_position=np.zeros(3),
    )
    with pytest.raises(SingularGeometryError):
        rx_coefficients(g, bad)


def test_cascaded_sum_single_element_alignment(params15):
    g = single_element()
    t = np.array([0.0, 0.0, -0.5])
    phi = aligned_phases(t, g, params15, None).phases
    c = cascaded_sum(t, phi, g, params15)
    assert c.imag == pytest.approx(0.0, abs=1e-12)
    assert c.real == pytest.approx(1.0 / (0.5 * 50.0), rel=1e-12)
    # single-term modulus does not depend on the phase at all
    c0 = cascaded_sum(t, np.zeros(1), g, params15)
    assert abs(c0) == pytest.approx(1.0 / (0.5 * 50.0), rel=1e-12)


def test_cascaded_sum_matches_distance_oracle(params15):
    g = build_tris_grid(2, 0.0075)
    rng = np.random.default_rng(7)
    for _ in range(5):
        t = np.array([rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05), -0.5])
        phi = aligned_phases(t, g, params15, None).phases
        c = cascaded_sum(t, phi, g, params15)
        d_t = np.linalg.norm(t - g.elements, axis=1)
        d_r = np.linalg.norm(params15.user_position - g.elements, axis=1)
        assert c.imag == pytest.approx(0.0, abs=1e-10)
        assert c.real == pytest.approx(np.sum(1.0 / (d_t * d_r)), rel=1e-12)


def test_kappa_value(params15):
    assert kappa(params15) == pytest.approx(LAM**2 / (16 * np.pi**2), rel=1e-12)
    assert kappa(params15) == pytest.approx(1.4248e-6, rel=1e-3)


def test_kappa_scaling(params15):
    double_p = SystemParams(carrier_frequency=params15.carrier_frequency, transmit_power=2.0)
    assert kappa(double_p) == pytest.approx(2 * kappa(params15), rel=1e-12)
    lossless = SystemParams(carrier_frequency=params15.carrier_frequency, transmission_loss=0.0)
    assert kappa(lossless) == 0.0


def test_snr_single_element_aligned(params15):
    g = single_element()
    t = np.array([0.0, 0.0, -0.5])
    phi = aligned_phases(t, g, params15, None).phases
    assert snr(t, phi, g, params15) == pytest.approx(
        kappa(params15) / (0.5 * 50.0) ** 2, rel=1e-12
    )


def test_snr_phase_periodicity(params15):
    g = build_tris_grid(3, 0.0075)
    t = np.array([0.01, -0.02, -0.5])
    rng = np.random.default_rng(11)
    phi = rng.uniform(0, 2 * np.pi, g.n_elements)
    shifted = phi + 2 * np.pi * rng.integers(-3, 4, g.n_elements)
    assert snr(t, shifted, g, params15) == pytest.approx(
        snr(t, phi, g, params15), rel=1e-9
    )


def test_snr_common_phase_offset_invariance(params15):
    g = build_tris_grid(3, 0.0075)
    t = np.array([0.01, -0.02, -0.5])
    rng = np.random.default_rng(12)
    phi = rng.uniform(0, 2 * np.pi, g.n_elements)
    assert snr(t, phi + 1.234, g, params15) == pytest.approx(
        snr(t, phi, g, params15), rel=1e-9
    )


def test_snr_element_permutation_invariance(params15):
    g = build_tris_grid(3, 0.0075)
    t = np.array([0.01, -0.02, -0.5])
    rng = np.random.default_rng(13)
    phi = rng.uniform(0, 2 * np.pi, g.n_elements)
    perm = rng.permutation(g.n_elements)
    g_perm = TrisGeometry.from_elements(g.elements[perm], g.spacing)
    assert snr(t, phi[perm], g_perm, params15) == pytest.approx(
        snr(t, phi, g, params15), rel=1e-12
    )
    assert snr_upper_bound(t, g_perm, params15) == pytest.approx(
        snr_upper_bound(t, g, params15), rel=1e-12
    )


def test_snr_mirror_invariance_boresight(params15):
    g = build_tris_grid(4, 0.0075)
    t = np.array([0.013, 0.021, -0.5])
    for sx, sy in ((-1, 1), (1, -1)):
        t2 = t * [sx, sy, 1]
        phi = aligned_phases(t, g, params15, 2).phases
        phi2 = aligned_phases(t2, g, params15, 2).phases
        assert snr(t2, phi2, g, params15) == pytest.approx(
            snr(t, phi, g, params15), rel=1e-9
        )


def test_continuous_alignment_hits_upper_bound(params15):
    g = build_tris_grid(10, 0.0075)
    rng = np.random.default_rng(14)
    for _ in range(5):
        t = np.array([rng.uniform(-0.075, 0.075), rng.uniform(-0.075, 0.075), -0.5])
        phi = aligned_phases(t, g, params15, None).phases
        assert snr(t, phi, g, params15) == pytest.approx(
            snr_upper_bound(t, g, params15), rel=1e-12
        )


def test_quantized_never_exceeds_upper_bound(params15):
    g = build_tris_grid(5, 0.0075)
    rng = np.random.default_rng(15)
    for _ in range(20):
        t = np.array([rng.uniform(-0.075, 0.075), rng.uniform(-0.075, 0.075), -0.5])
        phi = rng.uniform(0, 2 * np.pi, g.n_elements)
        assert snr(t, phi, g, params15) <= snr_upper_bound(t, g, params15) * (1 + 1e-12)


def test_upper_bound_center_distance_approximation(params15):
    g = build_tris_grid(10, 0.0075)
    t = np.array([0.0, 0.0, -0.5])
    d_t = np.linalg.norm(t - g.elements, axis=1)
    d_r = np.linalg.norm(params15.user_position - g.elements, axis=1)
    full = np.sum(1.0 / (d_t * d_r))
    assert full == pytest.approx(100.0 / (0.5 * 50.0), rel=0.01)


def test_coefficient_route_matches_kappa_route(params15):
    # P/sigma^2 * |sum f_n g_n Gamma e^{j phi}|^2 must equal kappa * |c|^2
    params = SystemParams(
        carrier_frequency=params15.carrier_frequency,
        tx_gain=1.7,
        rx_gain=0.8,
        tx_pattern=1.2,
        rx_pattern=0.9,
        transmission_loss=0.6,
        transmit_power=dbm_to_watts(13.6),
        noise_variance=dbm_to_watts(-70.0),
    )
    g = build_tris_grid(4, 0.0075)
    rng = np.random.default_rng(16)
    t = np.array([0.01, -0.03, -0.5])
    phi = rng.uniform(0, 2 * np.pi, g.n_elements)
    f = tx_coefficients(t, g, params)
    gg = rx_coefficients(g, params)
    received = np.sum(f * gg * params.transmission_loss * np.exp(1j * phi))
    direct = params.transmit_power / params.noise_variance * abs(received) ** 2
    assert direct == pytest.approx(snr(t, phi, g, params), rel=1e-9)


def test_product_attenuation(params15):
    # doubling every distance divides the upper bound by 16
    g = build_tris_grid(4, 0.0075)
    g2 = TrisGeometry.from_elements(g.elements * 2.0, g.spacing * 2.0)
    t = np.array([0.01, 0.02, -0.5])
    far = SystemParams(
        carrier_frequency=params15.carrier_frequency,
        user_position=params15.user_position * 2.0,
    )
    assert snr_upper_bound(2 * t, g2, far) == pytest.approx(
        snr_upper_bound(t, g, params15) / 16.0, rel=1e-12
    )


def test_db_conversions():
    assert dbm_to_watts(-70.0) == pytest.approx(1e-10, rel=1e-12)
    assert watts_to_dbm(dbm_to_watts(13.6)) == pytest.approx(13.6, rel=1e-12)
    assert to_db(100.0) == pytest.approx(20.0)


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(transmission_loss=1.5)
    with pytest.raises(ValueError):
        SystemParams(transmit_power=0.0)
    with pytest.raises(ValueError):
        SystemParams(noise_variance=-1.0)
    with pytest.raises(ValueError):
        SystemParams(tx_gain=0.0)
