"""Cascaded MA -> surface -> user channel under spherical-wave propagation.

The canonical SNR factorization keeps all gain/loss constants in the scalar
prefactor kappa and leaves the cascaded sum c with bare 1/(d_T * d_R)
amplitudes. The per-link coefficient functions carry their own sqrt(lambda*G*F/4pi)
factors and exist for model transparency; both routes give the same SNR.
"""

from dataclasses import dataclass, field

import numpy as np

from .geometry import TrisGeometry

C_LIGHT = 299_792_458.0  # m/s

TWO_PI = 2.0 * np.pi


class SingularGeometryError(Exception):
    """A propagation distance is zero (antenna coincides with an element)."""


@dataclass(frozen=True)
class SystemParams:
    """Physical constants and link-budget scalars.

    All powers in watts, distances in meters. Gains and patterns are
    dimensionless; transmission_loss is an amplitude loss in [0, 1].
    """

    carrier_frequency: float = 20e9
    tx_gain: float = 1.0          # MA antenna gain (G_f)
    rx_gain: float = 1.0          # user-side element gain (G_g)
    tx_pattern: float = 1.0       # surface pattern toward the MA (F_f)
    rx_pattern: float = 1.0       # surface pattern toward the user (F_g)
    transmission_loss: float = 1.0
    transmit_power: float = 1.0
    noise_variance: float = 1.0
    user_position: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 50.0]))

    def __post_init__(self):
        object.__setattr__(self, "user_position", np.asarray(self.user_position, dtype=float))
        if self.carrier_frequency <= 0:
            raise ValueError("carrier_frequency must be > 0")
        if not 0.0 <= self.transmission_loss <= 1.0:
            raise ValueError("transmission_loss must be in [0, 1]")
        if self.transmit_power <= 0:
            raise ValueError("transmit_power must be > 0")
        if self.noise_variance <= 0:
            raise ValueError("noise_variance must be > 0")
        if min(self.tx_gain, self.rx_gain, self.tx_pattern, self.rx_pattern) <= 0:
            raise ValueError("gains and patterns must be > 0")

    @property
    def wavelength(self) -> float:
        return C_LIGHT / self.carrier_frequency

    @property
    def gain_product(self) -> float:
        """G = G_f * G_g."""
        return self.tx_gain * self.rx_gain

    @property
    def pattern_product(self) -> float:
        """F = F_f * F_g."""
        return self.tx_pattern * self.rx_pattern


def tx_distances(t: np.ndarray, geometry: TrisGeometry) -> np.ndarray:
    """Per-element distance from the MA at t to each surface element."""
    d = np.linalg.norm(np.asarray(t, dtype=float) - geometry.elements, axis=1)
    if np.any(d == 0.0):
        raise SingularGeometryError("MA position coincides with a surface element")
    return d


def rx_distances(geometry: TrisGeometry, params: SystemParams) -> np.ndarray:
    """Per-element distance from each surface element to the user."""
    d = np.linalg.norm(params.user_position - geometry.elements, axis=1)
    if np.any(d == 0.0):
        raise SingularGeometryError("user position coincides with a surface element")
    return d


def _unit_phasor(distances: np.ndarray, wavelength: float) -> np.ndarray:
    # Reduce to fractional cycles before exponentiating; at d ~ 50 m and
    # lambda ~ 1.5 cm the raw argument spans thousands of cycles.
    return np.exp(-1j * TWO_PI * np.mod(distances / wavelength, 1.0))


def tx_coefficients(t: np.ndarray, geometry: TrisGeometry, params: SystemParams) -> np.ndarray:
    """Near-field MA -> element coefficients f_n."""
    d = tx_distances(t, geometry)
    lam = params.wavelength
    amp = np.sqrt(lam * params.tx_gain * params.tx_pattern / (4.0 * np.pi)) / d
    return amp * _unit_phasor(d, lam)


def rx_coefficients(geometry: TrisGeometry, params: SystemParams) -> np.ndarray:
    """Element -> user coefficients g_n (independent of the MA position)."""
    d = rx_distances(geometry, params)
    lam = params.wavelength
    amp = np.sqrt(lam * params.rx_gain * params.rx_pattern / (4.0 * np.pi)) / d
    return amp * _unit_phasor(d, lam)


def kappa(params: SystemParams) -> float:
    """SNR prefactor lambda^2 * Gamma^2 * P * G * F / (16 pi^2 sigma^2)."""
    lam = params.wavelength
    return (
        lam**2
        * params.transmission_loss**2
        * params.transmit_power
        * params.gain_product
        * params.pattern_product
        / (16.0 * np.pi**2 * params.noise_variance)
    )


def cascaded_sum(
    t: np.ndarray, phases: np.ndarray, geometry: TrisGeometry, params: SystemParams
) -> complex:
    """c = sum_n exp(j psi_n) / (d_n^T d_n^R), psi_n = phi_n - 2pi(d_n^T + d_n^R)/lambda."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (geometry.n_elements,):
        raise ValueError(
            f"phase vector length {phases.shape} does not match N={geometry.n_elements}"
        )
    d_t = tx_distances(t, geometry)
    d_r = rx_distances(geometry, params)
    psi = phases - TWO_PI * np.mod((d_t + d_r) / params.wavelength, 1.0)
    return complex(np.sum(np.exp(1j * psi) / (d_t * d_r)))


def snr(
    t: np.ndarray, phases: np.ndarray, geometry: TrisGeometry, params: SystemParams
) -> float:
    """Received SNR (linear) = kappa * |c|^2."""
    c = cascaded_sum(t, phases, geometry, params)
    return kappa(params) * abs(c) ** 2


def snr_upper_bound(t: np.ndarray, geometry: TrisGeometry, params: SystemParams) -> float:
    """Continuous-phase bound kappa * (sum_n 1/(d_n^T d_n^R))^2."""
    d_t = tx_distances(t, geometry)
    d_r = rx_distances(geometry, params)
    return kappa(params) * float(np.sum(1.0 / (d_t * d_r))) ** 2


def to_db(x: float) -> float:
    """Linear power ratio to dB."""
    return 10.0 * np.log10(x)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


def watts_to_dbm(watts: float) -> float:
    return 10.0 * np.log10(watts / 1e-3)
