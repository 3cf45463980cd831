"""Experiment runner: config parsing, strategy sweeps, and result files.

Configs are flat ``section.key=value`` text; defaults reproduce the baseline
scenario (half-wavelength spacing, free-space-like exponent 2, 800 m flight
at 20 m altitude and 8 m/s, eavesdropper 200 m from the array). dBm to mW
conversion happens only here; everything below works in linear power.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Optional

from .ais import AisConfig, optimize_point, run_baseline
from .beamforming import leakage_pair
from .geometry import (
    ArrayConfig,
    ConfigurationError,
    ScenarioGeometry,
    link_state_at,
    sample_trajectory,
)
from .power_allocation import beta_grid_oracle
from .rates import secrecy_rate, secrecy_sum_rate

CSV_HEADER = "strategy,M,Ps_dbm,n,theta_b,beta,Rb,Re,Rs,iterations,converged"

_VALID_FORMATS = ("csv", "json")


class ConfigError(ConfigurationError):
    """A config file key is missing, malformed, or violates an invariant."""


def dbm_to_mw(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0)


@dataclass(frozen=True)
class Strategy:
    """One of the sweepable per-point optimizers.

    kind: 'ais' (alternating closed-form loop), 'fixed' (leakage beamformers
    at a fixed split, no iteration), or 'grid_oracle' (alternating loop with
    exhaustive-search power allocation).
    """

    kind: str
    fixed_beta: Optional[float] = None

    @property
    def name(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{self.fixed_beta:g}"
        return self.kind


def parse_strategy(token: str) -> Strategy:
    token = token.strip()
    if token == "ais":
        return Strategy("ais")
    if token == "grid_oracle":
        return Strategy("grid_oracle")
    for prefix, suffix in (("fixed:", ""), ("fixed(", ")")):
        if token.startswith(prefix) and token.endswith(suffix):
            body = token[len(prefix) : len(token) - len(suffix)]
            try:
                beta = float(body)
            except ValueError:
                raise ConfigError(f"strategies: bad fixed beta {body!r}") from None
            if not 0.0 < beta < 1.0:
                raise ConfigError("strategies: fixed beta must lie in (0, 1)")
            return Strategy("fixed", beta)
    raise ConfigError(f"strategies: unknown strategy {token!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    geometry: ScenarioGeometry = ScenarioGeometry()
    array_spacing: float = 0.5
    # Noise floor consistent with ~1 MHz bandwidth and a small noise figure;
    # low enough that the whole flight stays in the high-SNR regime where the
    # antenna-sweep trends are visible.
    noise_dbm_bob: float = -110.0
    noise_dbm_eve: float = -110.0
    power_sweep_dbm: tuple[float, ...] = (10.0, 20.0, 30.0)
    antenna_sweep: tuple[int, ...] = (8,)
    strategies: tuple[Strategy, ...] = (
        Strategy("ais"),
        Strategy("fixed", 0.5),
        Strategy("fixed", 0.9),
    )
    ais: AisConfig = AisConfig()
    grid_step: float = 1e-3
    output_path: str = "results.csv"
    output_format: str = "csv"

    def __post_init__(self):
        if not self.power_sweep_dbm:
            raise ConfigError("sweep.power_dbm: sweep must be nonempty")
        if not self.antenna_sweep:
            raise ConfigError("sweep.antennas: sweep must be nonempty")
        if not self.strategies:
            raise ConfigError("strategies: at least one strategy required")
        if not 0.0 < self.grid_step <= 1e-2:
            raise ConfigError("grid.step: must lie in (0, 1e-2]")
        if self.output_format not in _VALID_FORMATS:
            raise ConfigError(f"output.format: must be one of {_VALID_FORMATS}")


def _parse_point(key: str, raw: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"{key}: expected three comma-separated coordinates")
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"{key}: non-numeric coordinate in {raw!r}") from None
    return (x, y, z)


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None


def _parse_list(key: str, raw: str, conv) -> tuple:
    items = [p.strip() for p in raw.split(",") if p.strip()]
    if not items:
        raise ConfigError(f"{key}: empty list")
    return tuple(conv(key, item) for item in items)


def parse_config_text(text: str) -> ExperimentConfig:
    """Build a validated config from flat key=value text.

    Unknown keys and malformed values raise ConfigError naming the key;
    an empty document yields the all-defaults config.
    """
    geometry_kwargs: dict = {}
    fields: dict = {}
    ais_kwargs: dict = {}
    geometry_keys = {
        "geometry.alice": ("alice", _parse_point),
        "geometry.eve": ("eve", _parse_point),
        "geometry.flight_start": ("flight_start", _parse_point),
        "geometry.flight_end": ("flight_end", _parse_point),
        "geometry.altitude": ("altitude", _parse_float),
        "geometry.speed": ("speed", _parse_float),
        "geometry.sample_interval": ("sample_interval", _parse_float),
        "geometry.path_loss_exponent": ("path_loss_exponent", _parse_float),
        "geometry.reference_gain": ("reference_gain", _parse_float),
    }
    simple_keys = {
        "array.spacing": ("array_spacing", _parse_float),
        "noise.bob_dbm": ("noise_dbm_bob", _parse_float),
        "noise.eve_dbm": ("noise_dbm_eve", _parse_float),
        "grid.step": ("grid_step", _parse_float),
        "output.path": ("output_path", lambda k, v: v),
        "output.format": ("output_format", lambda k, v: v),
    }
    ais_keys = {
        "ais.beta_init": ("beta_init", _parse_float),
        "ais.epsilon": ("epsilon", _parse_float),
        "ais.max_iterations": ("max_iterations", _parse_int),
    }
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key in geometry_keys:
            name, conv = geometry_keys[key]
            geometry_kwargs[name] = conv(key, raw)
        elif key in simple_keys:
            name, conv = simple_keys[key]
            fields[name] = conv(key, raw)
        elif key in ais_keys:
            name, conv = ais_keys[key]
            ais_kwargs[name] = conv(key, raw)
        elif key == "sweep.power_dbm":
            fields["power_sweep_dbm"] = _parse_list(key, raw, _parse_float)
        elif key == "sweep.antennas":
            fields["antenna_sweep"] = _parse_list(key, raw, _parse_int)
        elif key == "strategies":
            fields["strategies"] = tuple(
                parse_strategy(tok) for tok in raw.split(",") if tok.strip()
            )
        else:
            raise ConfigError(f"unknown config key {key!r}")
    try:
        geometry = ScenarioGeometry(**geometry_kwargs)
    except ConfigurationError as exc:
        raise ConfigError(f"geometry: {exc}") from exc
    try:
        ais_cfg = AisConfig(**ais_kwargs)
    except ValueError as exc:
        raise ConfigError(f"ais: {exc}") from exc
    return ExperimentConfig(geometry=geometry, ais=ais_cfg, **fields)


def parse_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)


def serialize_config(cfg: ExperimentConfig) -> str:
    """Emit the config in the same flat format parse_config_text accepts."""
    g = cfg.geometry

    def pt(p):
        return ",".join(f"{v:g}" for v in p)

    lines = [
        f"geometry.alice={pt(g.alice)}",
        f"geometry.eve={pt(g.eve)}",
        f"geometry.flight_start={pt(g.flight_start)}",
        f"geometry.flight_end={pt(g.flight_end)}",
        f"geometry.altitude={g.altitude:g}",
        f"geometry.speed={g.speed:g}",
        f"geometry.sample_interval={g.sample_interval:g}",
        f"geometry.path_loss_exponent={g.path_loss_exponent:g}",
        f"geometry.reference_gain={g.reference_gain:g}",
        f"array.spacing={cfg.array_spacing:g}",
        f"noise.bob_dbm={cfg.noise_dbm_bob:g}",
        f"noise.eve_dbm={cfg.noise_dbm_eve:g}",
        "sweep.power_dbm=" + ",".join(f"{p:g}" for p in cfg.power_sweep_dbm),
        "sweep.antennas=" + ",".join(str(m) for m in cfg.antenna_sweep),
        "strategies=" + ",".join(s.name for s in cfg.strategies),
        f"ais.beta_init={cfg.ais.beta_init:g}",
        f"ais.epsilon={cfg.ais.epsilon:g}",
        f"ais.max_iterations={cfg.ais.max_iterations}",
        f"grid.step={cfg.grid_step:g}",
        f"output.path={cfg.output_path}",
        f"output.format={cfg.output_format}",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ResultRecord:
    strategy: str
    m: int
    ps_dbm: float
    n: int
    theta_b: float
    beta: float
    rate_bob: float
    rate_eve: float
    secrecy: float
    iterations: Optional[int] = None
    converged: Optional[bool] = None


def _grid_pa_loop(link, ais_cfg: AisConfig, step: float):
    """Alternating loop with the exhaustive-search PA step instead of the
    closed form; used by the grid_oracle strategy."""
    beta = ais_cfg.beta_init
    prev_f = 0.0
    converged = False
    iterations = 0
    for _ in range(ais_cfg.max_iterations):
        bf = leakage_pair(link, beta)
        beta, f_val = beta_grid_oracle(link, bf, step)
        iterations += 1
        if abs(f_val - prev_f) <= ais_cfg.epsilon:
            converged = True
            break
        prev_f = f_val
    return bf, beta, iterations, converged


def _run_combo(
    cfg: ExperimentConfig, strategy: Strategy, m: int, ps_dbm: float
) -> list[ResultRecord]:
    array = ArrayConfig(num_antennas=m, spacing=cfg.array_spacing)
    sigma2_b = dbm_to_mw(cfg.noise_dbm_bob)
    sigma2_e = dbm_to_mw(cfg.noise_dbm_eve)
    p_s = dbm_to_mw(ps_dbm)
    records = []
    for point in sample_trajectory(cfg.geometry):
        link = link_state_at(point, cfg.geometry, array, sigma2_b, sigma2_e, p_s)
        if strategy.kind == "ais":
            bf, pa, trace = optimize_point(link, cfg.ais)
            beta = pa.beta_star
            breakdown = secrecy_rate(link, bf, beta)
            iterations, converged = trace.iterations_used, trace.converged
        elif strategy.kind == "grid_oracle":
            bf, beta, iterations, converged = _grid_pa_loop(link, cfg.ais, cfg.grid_step)
            breakdown = secrecy_rate(link, bf, beta)
        else:
            beta = strategy.fixed_beta
            bf, breakdown = run_baseline(link, beta)
            iterations, converged = None, None
        records.append(
            ResultRecord(
                strategy=strategy.name,
                m=m,
                ps_dbm=ps_dbm,
                n=point.sample_index,
                theta_b=point.theta_b,
                beta=beta,
                rate_bob=breakdown.rate_bob,
                rate_eve=breakdown.rate_eve,
                secrecy=breakdown.secrecy_rate,
                iterations=iterations,
                converged=converged,
            )
        )
    return records


def run_experiment(cfg: ExperimentConfig, parallel: int = 1) -> list[ResultRecord]:
    """Evaluate every (strategy, M, Ps) combination along the trajectory.

    Output order is deterministic (sorted by strategy name, M, Ps, n)
    regardless of worker scheduling.
    """
    combos = [
        (strategy, m, ps)
        for strategy in cfg.strategies
        for m in cfg.antenna_sweep
        for ps in cfg.power_sweep_dbm
    ]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            chunks = list(pool.map(_run_combo, *zip(*[(cfg, s, m, p) for s, m, p in combos])))
    else:
        chunks = [_run_combo(cfg, s, m, p) for s, m, p in combos]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: (r.strategy, r.m, r.ps_dbm, r.n))
    return records


def summarize(records: Iterable[ResultRecord]) -> list[dict]:
    """Per-(strategy, M, Ps) aggregates: mean per-point secrecy rate, the
    per-point-clamped sum, and the whole-flight clamped sum."""
    groups: dict[tuple, list[ResultRecord]] = {}
    for rec in records:
        groups.setdefault((rec.strategy, rec.m, rec.ps_dbm), []).append(rec)
    out = []
    for (strategy, m, ps), recs in sorted(groups.items()):
        diffs = [r.rate_bob - r.rate_eve for r in recs]
        out.append(
            {
                "strategy": strategy,
                "M": m,
                "Ps_dbm": ps,
                "points": len(recs),
                "mean_secrecy_rate": math.fsum(r.secrecy for r in recs) / len(recs),
                "ssr_per_point_clamped": math.fsum(r.secrecy for r in recs),
                "ssr_sum_clamped": secrecy_sum_rate(diffs),
            }
        )
    return out


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _record_row(rec: ResultRecord) -> list[str]:
    return [
        rec.strategy,
        str(rec.m),
        _fmt(rec.ps_dbm),
        str(rec.n),
        _fmt(rec.theta_b),
        _fmt(rec.beta),
        _fmt(rec.rate_bob),
        _fmt(rec.rate_eve),
        _fmt(rec.secrecy),
        "" if rec.iterations is None else str(rec.iterations),
        "" if rec.converged is None else str(rec.converged).lower(),
    ]


def write_results(records: list[ResultRecord], fmt: str, path: str | Path):
    """Write records as CSV (fixed header) or a JSON array, 12 significant
    digits for floats in both."""
    if not records:
        raise ValueError("no records to write")
    if fmt not in _VALID_FORMATS:
        raise ValueError(f"format must be one of {_VALID_FORMATS}")
    path = Path(path)
    try:
        if fmt == "csv":
            lines = [CSV_HEADER]
            lines.extend(",".join(_record_row(rec)) for rec in records)
            path.write_text("\n".join(lines) + "\n")
        else:
            fields = CSV_HEADER.split(",")
            rows = []
            for rec in records:
                row = dict(zip(fields, _record_row(rec)))
                rows.append(
                    {
                        "strategy": row["strategy"],
                        "M": rec.m,
                        "Ps_dbm": float(row["Ps_dbm"]),
                        "n": rec.n,
                        "theta_b": float(row["theta_b"]),
                        "beta": float(row["beta"]),
                        "Rb": float(row["Rb"]),
                        "Re": float(row["Re"]),
                        "Rs": float(row["Rs"]),
                        "iterations": rec.iterations,
                        "converged": rec.converged,
                    }
                )
            path.write_text(json.dumps(rows, indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def read_results_csv(path: str | Path) -> list[ResultRecord]:
    """Parse a results CSV written by write_results back into records."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing or unexpected header")
    records = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 11:
            raise ValueError(f"{path}: malformed row {line!r}")
        records.append(
            ResultRecord(
                strategy=parts[0],
                m=int(parts[1]),
                ps_dbm=float(parts[2]),
                n=int(parts[3]),
                theta_b=float(parts[4]),
                beta=float(parts[5]),
                rate_bob=float(parts[6]),
                rate_eve=float(parts[7]),
                secrecy=float(parts[8]),
                iterations=None if parts[9] == "" else int(parts[9]),
                converged=None if parts[10] == "" else parts[10] == "true",
            )
        )
    return records


def with_overrides(
    cfg: ExperimentConfig,
    power_sweep_dbm: Optional[Iterable[float]] = None,
    antenna_sweep: Optional[Iterable[int]] = None,
) -> ExperimentConfig:
    """Copy of cfg with sweep lists replaced (CLI convenience subcommands)."""
    updates = {}
    if power_sweep_dbm is not None:
        updates["power_sweep_dbm"] = tuple(power_sweep_dbm)
    if antenna_sweep is not None:
        updates["antenna_sweep"] = tuple(antenna_sweep)
    return replace(cfg, **updates) if updates else cfg
