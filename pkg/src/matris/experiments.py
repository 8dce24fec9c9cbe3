"""Config-driven harness reproducing the three experiment families
(SNR vs. quantization bits, SNR vs. transmit power, near/far-field distance
sweep) with deterministic CSV/JSON outputs.

Randomness contract: random MA starting positions for stream k are drawn from
numpy's counter-based Philox generator with key = seed and initial counter
k * 2**128, consumed as two uniform doubles (x then y offset). Streams are
assigned as k = 1000 * side_index + start_index, independent of the bit depth
so every resolution sees the same starts.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .baseline import default_baseline, mrt_snr
from .channel import SystemParams, dbm_to_watts, snr, snr_upper_bound, to_db
from .geometry import (
    MaRegion,
    build_tris_grid,
    random_position,
    rayleigh_distance,
)
from .optimizer import OptimizerSettings, ao_optimize
from .phase import aligned_phases

SCENARIOS = ("snr_vs_bits", "snr_vs_power", "nf_ff_sweep", "single_run")

CSV_SCHEMA = "# schema=1"

CSV_COLUMNS = (
    "scenario",
    "N",
    "b",
    "P_dBm",
    "d_T",
    "seed",
    "snr_db_proposed_ma",
    "snr_db_fixed",
    "snr_db_upper_bound",
    "snr_db_baseline_M1",
    "snr_db_baseline_M10",
    "iterations",
)


class ConfigError(Exception):
    """Invalid or missing experiment configuration key."""


@dataclass
class ExperimentConfig:
    """Flat experiment configuration; human units (GHz, dBm, meters)."""

    scenario: str
    frequency_ghz: float = 20.0
    power_dbm: float = 13.6
    power_dbm_list: list = field(default_factory=lambda: list(np.arange(0.0, 31.0, 2.0)))
    noise_dbm: float = -70.0
    side_counts: list = field(default_factory=lambda: [10, 18])
    spacing_wavelengths: float = 0.5
    region_side_m: float = 0.15
    region_center_x_m: float = -0.05
    region_center_y_m: float = 0.05
    d_t_m: float = 0.5
    d_total_m: float = 50.0
    d_t_list_m: list = field(default_factory=lambda: [0.5, 1.5, 5.0, 15.0, 25.0])
    user_distance_m: float = 50.0
    bits_list: list = field(default_factory=lambda: [1, 2, 3, 4])
    include_continuous: bool = True
    bits: int = 2
    random_starts: int = 10
    seed: int = 0
    tx_gain: float = 1.0
    rx_gain: float = 1.0
    tx_pattern: float = 1.0
    rx_pattern: float = 1.0
    transmission_loss: float = 1.0
    mu0_wavelengths: float = 0.25
    mu_min_wavelengths: float = 1e-6
    epsilon: float = 1e-6
    i_max: int = 50
    q_max: int = 200
    baseline_m_small: int = 1
    baseline_m_large: int = 10
    out_dir: str = "out"

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        for key in raw:
            if key not in known:
                raise ConfigError(f"unknown config key: {key!r}")
        if "scenario" not in raw:
            raise ConfigError("missing required config key: 'scenario'")
        cfg = cls(**raw)
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must contain a JSON object")
        return cls.from_dict(raw)

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"key 'scenario': unknown scenario {self.scenario!r}; "
                f"expected one of {SCENARIOS}"
            )
        for key in ("side_counts", "bits_list", "power_dbm_list", "d_t_list_m"):
            if not getattr(self, key):
                raise ConfigError(f"key {key!r}: list must be non-empty")
        if self.frequency_ghz <= 0:
            raise ConfigError("key 'frequency_ghz': must be > 0")
        if self.spacing_wavelengths <= 0:
            raise ConfigError("key 'spacing_wavelengths': must be > 0")
        if self.region_side_m <= 0:
            raise ConfigError("key 'region_side_m': must be > 0")
        if not 0.0 <= self.transmission_loss <= 1.0:
            raise ConfigError("key 'transmission_loss': must be in [0, 1]")
        if self.random_starts < 1:
            raise ConfigError("key 'random_starts': must be >= 1")
        if self.seed < 0 or self.seed > 2**64 - 1:
            raise ConfigError("key 'seed': must fit in an unsigned 64-bit integer")
        if any(b < 1 or b > 16 for b in self.bits_list):
            raise ConfigError("key 'bits_list': entries must be in [1, 16]")
        if not 1 <= self.bits <= 16:
            raise ConfigError("key 'bits': must be in [1, 16]")
        for d in self.d_t_list_m:
            if not 0.0 < d < self.d_total_m:
                raise ConfigError(
                    f"key 'd_t_list_m': value {d} outside (0, d_total_m={self.d_total_m})"
                )


def rng_stream(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator stream (see module docstring for the contract)."""
    return np.random.Generator(np.random.Philox(key=seed, counter=stream * 2**128))


@dataclass
class ResultRow:
    scenario: str
    N: int
    b: str  # "1".."16" or "cont"
    P_dBm: float
    d_T: float
    seed: int
    snr_db_proposed_ma: float
    snr_db_fixed: float
    snr_db_upper_bound: float
    snr_db_baseline_M1: float
    snr_db_baseline_M10: float
    iterations: int

    def sort_key(self):
        quantized = self.b != "cont"
        return (
            self.scenario,
            self.N,
            (0, int(self.b)) if quantized else (1, 0),
            self.P_dBm,
            self.d_T,
            self.seed,
        )


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def rows_to_csv(rows: list) -> str:
    lines = [CSV_SCHEMA, ",".join(CSV_COLUMNS)]
    for row in sorted(rows, key=ResultRow.sort_key):
        lines.append(",".join(_fmt(getattr(row, col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def _system_params(config: ExperimentConfig, user_distance: float) -> SystemParams:
    return SystemParams(
        carrier_frequency=config.frequency_ghz * 1e9,
        tx_gain=config.tx_gain,
        rx_gain=config.rx_gain,
        tx_pattern=config.tx_pattern,
        rx_pattern=config.rx_pattern,
        transmission_loss=config.transmission_loss,
        transmit_power=dbm_to_watts(config.power_dbm),
        noise_variance=dbm_to_watts(config.noise_dbm),
        user_position=np.array([0.0, 0.0, user_distance]),
    )


def _settings(config: ExperimentConfig, wavelength: float) -> OptimizerSettings:
    return OptimizerSettings(
        mu0=config.mu0_wavelengths * wavelength,
        mu_min=config.mu_min_wavelengths * wavelength,
        epsilon=config.epsilon,
        i_max=config.i_max,
        q_max=config.q_max,
    )


def _region(config: ExperimentConfig, d_t: float) -> MaRegion:
    return MaRegion(
        center=np.array([config.region_center_x_m, config.region_center_y_m, -d_t]),
        side=config.region_side_m,
    )


def _resolutions(config: ExperimentConfig) -> list:
    res = [int(b) for b in config.bits_list]
    if config.include_continuous:
        res.append(None)
    return res


def _b_label(bits) -> str:
    return "cont" if bits is None else str(bits)


def _baseline_pair(config: ExperimentConfig, params: SystemParams, center) -> tuple:
    m1 = mrt_snr(default_baseline(config.baseline_m_small, params, center), params)
    m10 = mrt_snr(default_baseline(config.baseline_m_large, params, center), params)
    return m1, m10


def _execute(jobs: list, workers: int) -> list:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: job(), jobs))
    return [job() for job in jobs]


def run_snr_vs_bits(config: ExperimentConfig, workers: int = 1) -> tuple[list, dict]:
    """Fixed-center vs. AO-optimized SNR across bit depths and surface sizes,
    over seeded random starting positions."""
    jobs = []
    for side_index, side in enumerate(config.side_counts):
        params = _system_params(config, config.user_distance_m)
        geometry = build_tris_grid(side, config.spacing_wavelengths * params.wavelength)
        region = _region(config, config.d_t_m)
        settings = _settings(config, params.wavelength)
        m1, m10 = _baseline_pair(config, params, region.center)
        for bits in _resolutions(config):
            for k in range(config.random_starts):
                stream = 1000 * side_index + k
                jobs.append(
                    _BitsJob(config, geometry, params, region, settings, bits, k, stream, m1, m10)
                )
    rows = _execute(jobs, workers)
    return rows, {}


class _BitsJob:
    # snr_db_fixed is the unoptimized antenna at the row's own starting
    # position; proposed >= fixed then holds row-by-row.
    def __init__(self, config, geometry, params, region, settings, bits, k, stream, m1, m10):
        self.config, self.geometry, self.params = config, geometry, params
        self.region, self.settings, self.bits = region, settings, bits
        self.k, self.stream = k, stream
        self.m1, self.m10 = m1, m10

    def __call__(self) -> ResultRow:
        t0 = random_position(self.region, rng_stream(self.config.seed, self.stream))
        fixed = snr(
            t0,
            aligned_phases(t0, self.geometry, self.params, self.bits).phases,
            self.geometry,
            self.params,
        )
        t_star, phases_star, trace = ao_optimize(
            t0, self.geometry, self.params, self.region, self.bits, self.settings
        )
        best = snr(t_star, phases_star.phases, self.geometry, self.params)
        return ResultRow(
            scenario=self.config.scenario,
            N=self.geometry.n_elements,
            b=_b_label(self.bits),
            P_dBm=self.config.power_dbm,
            d_T=self.config.d_t_m,
            seed=self.k,
            snr_db_proposed_ma=to_db(best),
            snr_db_fixed=to_db(fixed),
            snr_db_upper_bound=to_db(snr_upper_bound(t_star, self.geometry, self.params)),
            snr_db_baseline_M1=to_db(self.m1),
            snr_db_baseline_M10=to_db(self.m10),
            iterations=trace.iterations,
        )


def run_snr_vs_power(config: ExperimentConfig, workers: int = 1) -> tuple[list, dict]:
    """Transmit-power sweep. Every SNR in the model is linear in P, so each
    configuration is optimized once at the reference power and scaled across
    the grid (the optimized position is power-independent)."""
    rows = []
    p_ref_w = dbm_to_watts(config.power_dbm)
    for side in config.side_counts:
        params = _system_params(config, config.user_distance_m)
        geometry = build_tris_grid(side, config.spacing_wavelengths * params.wavelength)
        region = _region(config, config.d_t_m)
        settings = _settings(config, params.wavelength)
        m1_ref, m10_ref = _baseline_pair(config, params, region.center)
        for bits in (config.bits, None):
            fixed_ref = snr(
                region.center,
                aligned_phases(region.center, geometry, params, bits).phases,
                geometry,
                params,
            )
            t_star, phases_star, trace = ao_optimize(
                region.center, geometry, params, region, bits, settings
            )
            best_ref = snr(t_star, phases_star.phases, geometry, params)
            ub_ref = snr_upper_bound(t_star, geometry, params)
            for p_dbm in config.power_dbm_list:
                scale = dbm_to_watts(p_dbm) / p_ref_w
                rows.append(
                    ResultRow(
                        scenario=config.scenario,
                        N=geometry.n_elements,
                        b=_b_label(bits),
                        P_dBm=float(p_dbm),
                        d_T=config.d_t_m,
                        seed=config.seed,
                        snr_db_proposed_ma=to_db(best_ref * scale),
                        snr_db_fixed=to_db(fixed_ref * scale),
                        snr_db_upper_bound=to_db(ub_ref * scale),
                        snr_db_baseline_M1=to_db(m1_ref * scale),
                        snr_db_baseline_M10=to_db(m10_ref * scale),
                        iterations=trace.iterations,
                    )
                )
    return rows, {}


def run_nf_ff_sweep(config: ExperimentConfig, workers: int = 1) -> tuple[list, dict]:
    """Near/far-field placement sweep at constant total distance d_T + d_R."""
    rows = []
    placements = []
    for side in config.side_counts:
        for d_t in config.d_t_list_m:
            params = _system_params(config, config.d_total_m - d_t)
            geometry = build_tris_grid(
                side, config.spacing_wavelengths * params.wavelength
            )
            region = _region(config, d_t)
            settings = _settings(config, params.wavelength)
            m1, m10 = _baseline_pair(config, params, region.center)
            fixed = snr(
                region.center,
                aligned_phases(region.center, geometry, params, config.bits).phases,
                geometry,
                params,
            )
            t_star, phases_star, trace = ao_optimize(
                region.center, geometry, params, region, config.bits, settings
            )
            best = snr(t_star, phases_star.phases, geometry, params)
            d_ray = rayleigh_distance(geometry, params.wavelength)
            placements.append(
                {
                    "N": geometry.n_elements,
                    "d_T": d_t,
                    "rayleigh_distance_m": d_ray,
                    "near_field": d_t < d_ray,
                }
            )
            rows.append(
                ResultRow(
                    scenario=config.scenario,
                    N=geometry.n_elements,
                    b=str(config.bits),
                    P_dBm=config.power_dbm,
                    d_T=d_t,
                    seed=config.seed,
                    snr_db_proposed_ma=to_db(best),
                    snr_db_fixed=to_db(fixed),
                    snr_db_upper_bound=to_db(snr_upper_bound(t_star, geometry, params)),
                    snr_db_baseline_M1=to_db(m1),
                    snr_db_baseline_M10=to_db(m10),
                    iterations=trace.iterations,
                )
            )
    return rows, {"placements": placements}


def run_single(config: ExperimentConfig, workers: int = 1) -> tuple[list, dict]:
    """One AO run from a seeded random start, with the full trace for dumping."""
    side = config.side_counts[0]
    params = _system_params(config, config.user_distance_m)
    geometry = build_tris_grid(side, config.spacing_wavelengths * params.wavelength)
    region = _region(config, config.d_t_m)
    settings = _settings(config, params.wavelength)
    m1, m10 = _baseline_pair(config, params, region.center)
    fixed = snr(
        region.center,
        aligned_phases(region.center, geometry, params, config.bits).phases,
        geometry,
        params,
    )
    t0 = random_position(region, rng_stream(config.seed, 0))
    t_star, phases_star, trace = ao_optimize(
        t0, geometry, params, region, config.bits, settings
    )
    best = snr(t_star, phases_star.phases, geometry, params)
    row = ResultRow(
        scenario=config.scenario,
        N=geometry.n_elements,
        b=str(config.bits),
        P_dBm=config.power_dbm,
        d_T=config.d_t_m,
        seed=config.seed,
        snr_db_proposed_ma=to_db(best),
        snr_db_fixed=to_db(fixed),
        snr_db_upper_bound=to_db(snr_upper_bound(t_star, geometry, params)),
        snr_db_baseline_M1=to_db(m1),
        snr_db_baseline_M10=to_db(m10),
        iterations=trace.iterations,
    )
    trace_dump = {
        "initial": {
            "snr_db": to_db(trace.initial_snr),
            "position": list(trace.initial_position),
            "phases": list(trace.initial_phases),
        },
        "iterations": [
            {
                "snr_db": to_db(s),
                "position": list(p),
                "phases": list(ph),
            }
            for s, p, ph in zip(trace.snr, trace.positions, trace.phases)
        ],
        "termination": trace.termination,
    }
    return [row], {"trace": trace_dump}


_RUNNERS = {
    "snr_vs_bits": run_snr_vs_bits,
    "snr_vs_power": run_snr_vs_power,
    "nf_ff_sweep": run_nf_ff_sweep,
    "single_run": run_single,
}


def run_scenario(config: ExperimentConfig, workers: int = 1) -> tuple[list, dict]:
    """Dispatch to the scenario runner; returns (rows, extra-meta)."""
    return _RUNNERS[config.scenario](config, workers)


def write_outputs(config: ExperimentConfig, out_dir, workers: int = 1) -> dict:
    """Run the scenario and write <scenario>.csv + <scenario>.meta.json.

    Wall time lives only in the meta file; the CSV is byte-reproducible for a
    given config + seed.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    rows, extra = run_scenario(config, workers)
    wall_ms = (time.perf_counter() - started) * 1e3
    csv_path = out / f"{config.scenario}.csv"
    csv_path.write_text(rows_to_csv(rows))
    meta = {
        "schema": 1,
        "tool_version": __version__,
        "scenario": config.scenario,
        "config": asdict(config),
        "wall_ms": wall_ms,
        "rows": len(rows),
    }
    trace = extra.pop("trace", None)
    meta.update(extra)
    meta_path = out / f"{config.scenario}.meta.json"
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    result = {"csv": str(csv_path), "meta": str(meta_path)}
    if trace is not None:
        trace_path = out / "trace.json"
        trace_path.write_text(json.dumps(trace, indent=2) + "\n")
        result["trace"] = str(trace_path)
    return result
