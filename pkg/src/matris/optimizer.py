"""Analytic SNR gradient, gradient-ascent position update with backtracking,
and the outer alternating-optimization loop.

The step size mu is a length in meters along the normalized in-plane gradient
(the raw gradient magnitude spans many orders because of the kappa scaling);
defaults are tied to the wavelength since the SNR oscillates on that scale.
"""

from dataclasses import dataclass, field

import numpy as np

from .channel import TWO_PI, SystemParams, kappa, rx_distances, snr, tx_distances
from .geometry import MaRegion, TrisGeometry, in_region
from .phase import PhaseConfig, aligned_phases

# Relative-convergence floor to avoid division pathologies at near-zero SNR.
SNR_FLOOR = 1e-30


@dataclass(frozen=True)
class OptimizerSettings:
    """Step-size and termination controls for the AO loop."""

    mu0: float            # initial step length, meters
    mu_min: float         # minimum step length, meters
    epsilon: float = 1e-6  # relative SNR convergence tolerance
    i_max: int = 50       # max outer iterations
    q_max: int = 200      # max gradient-ascent iterations per outer iteration

    def __post_init__(self):
        if not 0 < self.mu_min < self.mu0:
            raise ValueError("require 0 < mu_min < mu0")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.i_max < 1 or self.q_max < 1:
            raise ValueError("i_max and q_max must be >= 1")

    @classmethod
    def for_wavelength(cls, wavelength: float, **overrides) -> "OptimizerSettings":
        """Defaults mu0 = lambda/4, mu_min = lambda * 1e-6."""
        kwargs = dict(mu0=wavelength / 4.0, mu_min=wavelength * 1e-6)
        kwargs.update(overrides)
        return cls(**kwargs)


@dataclass
class AoTrace:
    """Per-outer-iteration record of the AO run.

    The starting state (iteration 0) is kept in the ``initial_*`` fields;
    ``snr``/``positions``/``phases`` hold one entry per completed outer
    iteration, so their length is at most i_max.
    """

    initial_snr: float
    initial_position: np.ndarray
    initial_phases: np.ndarray
    snr: list[float] = field(default_factory=list)
    positions: list[np.ndarray] = field(default_factory=list)
    phases: list[np.ndarray] = field(default_factory=list)
    termination: str = "i_max"

    @property
    def snr_sequence(self) -> list[float]:
        """Initial SNR followed by the per-iteration SNRs."""
        return [self.initial_snr] + self.snr

    @property
    def iterations(self) -> int:
        return len(self.snr)


def snr_gradient(
    t: np.ndarray,
    phases: np.ndarray,
    geometry: TrisGeometry,
    params: SystemParams,
) -> np.ndarray:
    """Gradient of the SNR with respect to the MA position (3-vector, per meter).

    2*kappa*Re{ (-sum_n e^{j psi_n} (t - e_n)/(d_R d_T^2) (j 2pi/lambda + 1/d_T)) c* }.
    The z component is reported but the position update only uses (x, y).
    """
    t = np.asarray(t, dtype=float)
    phases = np.asarray(phases, dtype=float)
    diff = t - geometry.elements
    d_t = tx_distances(t, geometry)
    d_r = rx_distances(geometry, params)
    lam = params.wavelength
    psi = phases - TWO_PI * np.mod((d_t + d_r) / lam, 1.0)
    phasor = np.exp(1j * psi)
    c = np.sum(phasor / (d_t * d_r))
    terms = phasor / (d_r * d_t**2) * (1j * TWO_PI / lam + 1.0 / d_t)
    grad_c = -np.sum(terms[:, None] * diff, axis=0)
    return 2.0 * kappa(params) * np.real(grad_c * np.conj(c))


def ma_update(
    t: np.ndarray,
    phases: np.ndarray,
    geometry: TrisGeometry,
    params: SystemParams,
    region: MaRegion,
    settings: OptimizerSettings,
) -> np.ndarray:
    """Gradient-ascent position update with backtracking step halving.

    Each of up to q_max iterations steps along the normalized in-plane
    gradient, halving mu from mu0 until the candidate is feasible and strictly
    improves the SNR; if mu falls below mu_min without an accepted step the
    loop terminates with the position unchanged for that iteration. The
    returned position never has lower SNR than the input.
    """
    current = np.asarray(t, dtype=float).copy()
    current_snr = snr(current, phases, geometry, params)
    for _ in range(settings.q_max):
        grad = snr_gradient(current, phases, geometry, params)
        direction = np.array([grad[0], grad[1], 0.0])
        norm = np.linalg.norm(direction)
        if norm == 0.0:
            break
        direction /= norm
        mu = settings.mu0
        accepted = False
        while mu >= settings.mu_min:
            candidate = current + mu * direction
            if in_region(candidate, region):
                candidate_snr = snr(candidate, phases, geometry, params)
                if candidate_snr > current_snr:
                    current = candidate
                    current_snr = candidate_snr
                    accepted = True
                    break
            mu /= 2.0
        if not accepted:
            break
    return current


def ao_optimize(
    t0: np.ndarray,
    geometry: TrisGeometry,
    params: SystemParams,
    region: MaRegion,
    bits: int | None,
    settings: OptimizerSettings,
) -> tuple[np.ndarray, PhaseConfig, AoTrace]:
    """Alternate position updates and (quantized) phase alignment until the
    relative SNR change falls below epsilon or i_max iterations elapse.

    The phase step keeps the previous phase vector if re-alignment at the new
    position would lower the SNR, so the trace is non-decreasing by
    construction.
    """
    t = np.asarray(t0, dtype=float).copy()
    if not in_region(t, region):
        raise ValueError("initial MA position is outside the feasible region")
    config = aligned_phases(t, geometry, params, bits)
    current_snr = snr(t, config.phases, geometry, params)
    trace = AoTrace(
        initial_snr=current_snr,
        initial_position=t.copy(),
        initial_phases=config.phases.copy(),
    )
    for _ in range(settings.i_max):
        t = ma_update(t, config.phases, geometry, params, region, settings)
        snr_moved = snr(t, config.phases, geometry, params)
        realigned = aligned_phases(t, geometry, params, bits)
        snr_realigned = snr(t, realigned.phases, geometry, params)
        if snr_realigned >= snr_moved:
            config = realigned
            new_snr = snr_realigned
        else:
            new_snr = snr_moved
        trace.snr.append(new_snr)
        trace.positions.append(t.copy())
        trace.phases.append(config.phases.copy())
        if abs(new_snr - current_snr) <= settings.epsilon * max(current_snr, SNR_FLOOR):
            current_snr = new_snr
            trace.termination = "converged"
            break
        current_snr = new_snr
    return t, config, trace
