"""b-bit phase sets, nearest-point circular quantization, and phase alignment.

Quantization measures circular distance min(|delta|, 2pi - |delta|) rather
than raw linear distance, so phases just below 2pi project to 0 instead of
the top of the set; ties (exactly half a step away) go to the smaller set
value for determinism.
"""

from dataclasses import dataclass

import numpy as np

from .channel import TWO_PI, SystemParams, rx_distances, tx_distances
from .geometry import TrisGeometry


@dataclass(frozen=True)
class PhaseConfig:
    """Per-element phase vector in [0, 2pi) plus its resolution.

    ``bits`` is None for continuous phases, otherwise the quantization depth.
    """

    phases: np.ndarray
    bits: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "phases", np.asarray(self.phases, dtype=float))


def phase_set(bits: int) -> np.ndarray:
    """The 2^b uniformly spaced quantization values {k * 2pi/2^b, k = 0..2^b - 1}."""
    if not 1 <= bits <= 16:
        raise ValueError(f"bits must be in [1, 16], got {bits}")
    count = 2**bits
    return np.arange(count) * (TWO_PI / count)


def quantize(phi, values: np.ndarray):
    """Project phase(s) onto the nearest set value by circular distance.

    Accepts a scalar or an array; any real input is reduced mod 2pi first.
    Exact ties resolve to the smaller set value (first index of the sorted set).
    """
    phi = np.mod(np.asarray(phi, dtype=float), TWO_PI)
    delta = np.abs(phi[..., None] - values)
    circ = np.minimum(delta, TWO_PI - delta)
    picked = values[np.argmin(circ, axis=-1)]
    return picked if picked.ndim else float(picked)


def propagation_phases(
    t: np.ndarray, geometry: TrisGeometry, params: SystemParams
) -> np.ndarray:
    """Ideal per-element compensation phases 2pi (d_n^T + d_n^R)/lambda mod 2pi."""
    d_t = tx_distances(t, geometry)
    d_r = rx_distances(geometry, params)
    return TWO_PI * np.mod((d_t + d_r) / params.wavelength, 1.0)


def aligned_phases(
    t: np.ndarray,
    geometry: TrisGeometry,
    params: SystemParams,
    bits: int | None = None,
) -> PhaseConfig:
    """Phase vector that (continuously or after b-bit quantization) cancels the
    propagation-induced phase of every element for the MA at t."""
    ideal = propagation_phases(t, geometry, params)
    if bits is None:
        return PhaseConfig(phases=ideal, bits=None)
    return PhaseConfig(phases=quantize(ideal, phase_set(bits)), bits=bits)
