"""Conventional fully-active base station reference: a fixed uniform linear
array with per-antenna RF chains doing maximum-ratio transmission over a
direct line-of-sight link to the user."""

from dataclasses import dataclass, field

import numpy as np

from .channel import (
    SingularGeometryError,
    SystemParams,
    snr,
    to_db,
)
from .geometry import MaRegion, TrisGeometry
from .optimizer import OptimizerSettings, ao_optimize


@dataclass(frozen=True)
class BaselineConfig:
    """Fixed array: M antennas along ``axis``, centered at ``center``.

    ``spacing`` defaults to lambda/2 when built via :func:`default_baseline`.
    """

    antenna_count: int
    spacing: float
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    axis: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))

    def __post_init__(self):
        if self.antenna_count < 1:
            raise ValueError("antenna_count must be >= 1")
        if self.spacing <= 0:
            raise ValueError("spacing must be > 0")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        axis = np.asarray(self.axis, dtype=float)
        object.__setattr__(self, "axis", axis / np.linalg.norm(axis))


def default_baseline(antenna_count: int, params: SystemParams, center=None) -> BaselineConfig:
    """ULA along x with lambda/2 spacing."""
    if center is None:
        center = np.zeros(3)
    return BaselineConfig(
        antenna_count=antenna_count,
        spacing=params.wavelength / 2.0,
        center=center,
    )


def array_positions(config: BaselineConfig) -> np.ndarray:
    """(M, 3) element positions, centered on config.center."""
    m = config.antenna_count
    offsets = (np.arange(m) - (m - 1) / 2.0) * config.spacing
    return config.center + offsets[:, None] * config.axis


def mrt_snr(config: BaselineConfig, params: SystemParams) -> float:
    """MRT SNR = (P/sigma^2) * sum_m |h_m|^2 over the direct link.

    Per-antenna channel magnitude |h_m| = sqrt(lambda^2 G /(4pi)^2) / d_m with
    G the direct-link gain product (defaults to the same G_f*G_g budget as the
    cascaded link).
    """
    d = np.linalg.norm(params.user_position - array_positions(config), axis=1)
    if np.any(d == 0.0):
        raise SingularGeometryError("user coincides with a baseline array element")
    lam = params.wavelength
    gains = (lam / (4.0 * np.pi)) ** 2 * params.gain_product / d**2
    return params.transmit_power / params.noise_variance * float(np.sum(gains))


def proposed_vs_baseline_gap(
    geometry: TrisGeometry,
    params: SystemParams,
    region: MaRegion,
    bits: int | None,
    settings: OptimizerSettings,
    config: BaselineConfig,
    t0: np.ndarray | None = None,
) -> float:
    """dB gap 10*log10(SNR_proposed / SNR_baseline) under identical P, sigma^2.

    Both SNRs scale linearly in P, so the gap is power-independent.
    """
    if t0 is None:
        t0 = region.center
    t_star, phases_star, _ = ao_optimize(t0, geometry, params, region, bits, settings)
    snr_proposed = snr(t_star, phases_star.phases, geometry, params)
    snr_baseline = mrt_snr(config, params)
    return to_db(snr_proposed / snr_baseline)
