"""Simulator and optimizer for a base station built from one movable antenna
behind a transmissive reconfigurable surface.

Submodules:
    geometry    -- surface grids, distances, Rayleigh boundary, feasible region
    channel     -- near-field link coefficients, cascaded sum, SNR
    phase       -- b-bit phase sets, quantization, phase alignment
    optimizer   -- SNR gradient, gradient-ascent position update, AO loop
    baseline    -- conventional fixed-array MRT reference
    experiments -- config-driven sweep harness with CSV/JSON outputs
"""

__version__ = "0.1.0"
