"""Sweep orchestration, seeded Monte-Carlo averaging, and CSV emission.

Each sweep point runs every scheme over `trials` seeded scenario draws; rows
are ordered by (axis index, scheme order, trial) regardless of worker
completion order, and mean summary rows (seed column "mean") are appended per
(axis point, scheme).
"""

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .amud import CoverageDesign, SchemeId, run_scheme
from .config import ConfigError, SimConfig
from .scenario import (GroundStation, ScenarioState, generate_cluster_users,
                       generate_fixed_users, generate_users)

CSV_HEADER = ("axis", "axis_value", "scheme", "seed", "capacity_bps", "power_w",
              "ee_bps_per_w", "fairness", "served", "dropped")


class Axis(Enum):
    EXCESS_USERS = "ExcessUsers"
    LEO_TX_POWER = "LeoTxPower"
    LEO_ALTITUDE = "LeoAltitude"
    FAIRNESS_USERS = "FairnessUsers"


AXIS_PRESETS = {
    Axis.EXCESS_USERS: [40 * k for k in range(1, 11)],
    Axis.LEO_TX_POWER: [30, 40, 50, 60],           # dBm
    Axis.LEO_ALTITUDE: [600, 800, 1000, 1200, 1400],  # km
    Axis.FAIRNESS_USERS: [10 * k for k in range(1, 11)],
}

ALL_SCHEMES = (SchemeId.AMUD_SAGIN, SchemeId.EGC_SAGIN, SchemeId.LEO_GBS, SchemeId.GBS_ONLY)

# Sweep scenarios hold 400 excess users on the off-axis sweeps so their
# operating point matches the headline configuration.
DEFAULT_EXCESS = 400
CLUSTER_RADIUS_FACTOR = 0.87


@dataclass
class SweepSpec:
    axis: Axis
    values: list
    schemes: list
    trials: int
    base_seed: int

    def __post_init__(self):
        if not self.values:
            raise ValueError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.schemes:
            raise ValueError("schemes must be non-empty")


@dataclass
class ResultRow:
    axis: str
    axis_value: float
    scheme: str
    seed: object  # trial seed, or "mean" for summary rows
    capacity_bps: float
    power_w: float
    ee_bps_per_w: float
    fairness: float
    served: float
    dropped: float


def cluster_centers(cfg: SimConfig):
    """Two hotspot centers aligned with detection-grid cells (0,3) and (3,0)."""
    design = CoverageDesign.from_env(cfg.a2g_params(), cfg.uav_altitude_m, cfg.pl_max_db)
    cell = 2.0 * design.radius
    return [np.array([0.5 * cell, 3.5 * cell]),
            np.array([3.5 * cell, 0.5 * cell])], CLUSTER_RADIUS_FACTOR * design.radius


def build_scenario(axis: Axis, value, cfg: SimConfig, seed: int) -> ScenarioState:
    """Compose the per-trial world: clustered hotspot users plus background.

    ExcessUsers: value users beyond the GBS cap, split over the two clusters.
    FairnessUsers: total held at cfg.total_users; value = clustered users.
    LeoTxPower / LeoAltitude: the 400-excess composition with the satellite
    parameter overridden.
    """
    if axis is Axis.LEO_TX_POWER:
        cfg = cfg.replace(tx_power_dbm=float(value))
        n_cluster, n_background = DEFAULT_EXCESS, cfg.gbs_max_users
    elif axis is Axis.LEO_ALTITUDE:
        cfg = cfg.replace(altitude_m=float(value) * 1e3)
        n_cluster, n_background = DEFAULT_EXCESS, cfg.gbs_max_users
    elif axis is Axis.EXCESS_USERS:
        n_cluster, n_background = int(value), cfg.gbs_max_users
    elif axis is Axis.FAIRNESS_USERS:
        n_cluster = int(value)
        n_background = cfg.total_users - n_cluster
        if n_background < 0:
            raise ValueError("FairnessUsers value exceeds total_users")
    else:
        raise ValueError(f"unknown axis {axis}")

    rng = np.random.default_rng(seed)
    if cfg.user_placement == "ppp":
        intensity = n_background / (cfg.area_x_m * cfg.area_y_m)
        users = generate_users(intensity, cfg.area, rng)
    else:
        users = generate_fixed_users(n_background, cfg.area, rng)
    centers, radius = cluster_centers(cfg)
    counts = [n_cluster // 2, n_cluster - n_cluster // 2]
    for center, count in zip(centers, counts):
        users.extend(generate_cluster_users(center, radius, count, cfg.area, rng,
                                            start_id=len(users)))
    gbs = GroundStation(position=np.array([cfg.gbs_x_m, cfg.gbs_y_m]), area=cfg.area,
                        max_users=cfg.gbs_max_users, tx_power_per_user=cfg.gbs_tx_power_w)
    return ScenarioState(users=users, gbs=gbs, satellite=cfg.satellite(),
                         num_slots=cfg.num_slots, slot_duration_s=cfg.slot_duration_s,
                         rng_seed=seed,
                         density_threshold_per_m2=cfg.hotspot_density_per_m2), cfg


def _run_point(axis: Axis, value, scheme: SchemeId, trial: int, cfg: SimConfig,
               base_seed: int) -> ResultRow:
    seed = base_seed + trial
    state, eff_cfg = build_scenario(axis, value, cfg, seed)
    _, score = run_scheme(scheme, state, eff_cfg, seed)
    return ResultRow(axis=axis.value, axis_value=value, scheme=scheme.value, seed=seed,
                     capacity_bps=float(score.capacity_total),
                     power_w=float(score.power_total),
                     ee_bps_per_w=float(score.energy_eff),
                     fairness=float(score.fairness),
                     served=int(score.served), dropped=int(score.dropped))


def _worker_count() -> int:
    env = os.environ.get("SAGIN_SIM_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"SAGIN_SIM_THREADS must be an integer, got {env!r}") from exc
    return min(4, os.cpu_count() or 1)


def run_sweep(spec: SweepSpec, cfg: SimConfig) -> list:
    """All (axis point, scheme, trial) rows plus per-point mean summary rows."""
    tasks = [(vi, si, trial)
             for vi in range(len(spec.values))
             for si in range(len(spec.schemes))
             for trial in range(spec.trials)]

    def work(task):
        vi, si, trial = task
        return task, _run_point(spec.axis, spec.values[vi], spec.schemes[si], trial,
                                cfg, spec.base_seed)

    results = {}
    workers = _worker_count()
    if workers == 1:
        for task in tasks:
            key, row = work(task)
            results[key] = row
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for key, row in pool.map(work, tasks):
                results[key] = row

    rows = [results[t] for t in sorted(results)]
    for vi, value in enumerate(spec.values):
        for si, scheme in enumerate(spec.schemes):
            group = [results[(vi, si, t)] for t in range(spec.trials)]
            rows.append(ResultRow(
                axis=spec.axis.value, axis_value=value, scheme=scheme.value, seed="mean",
                capacity_bps=float(np.mean([r.capacity_bps for r in group])),
                power_w=float(np.mean([r.power_w for r in group])),
                ee_bps_per_w=float(np.mean([r.ee_bps_per_w for r in group])),
                fairness=float(np.mean([r.fairness for r in group])),
                served=float(np.mean([r.served for r in group])),
                dropped=float(np.mean([r.dropped for r in group]))))
    return rows


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("boolean CSV fields are not expected")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(rows, path) -> None:
    """Emit the fixed-schema CSV; float fields use round-trip repr formatting."""
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for r in rows:
                writer.writerow([r.axis, _fmt(r.axis_value), r.scheme, _fmt(r.seed),
                                 _fmt(r.capacity_bps), _fmt(r.power_w),
                                 _fmt(r.ee_bps_per_w), _fmt(r.fairness),
                                 _fmt(r.served), _fmt(r.dropped)])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv_rows(path) -> list:
    """Parse an emitted CSV back into ResultRow values (floats exact)."""
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header in {path}")
        for rec in reader:
            axis, axis_value, scheme, seed = rec[0], rec[1], rec[2], rec[3]
            nums = [float(x) for x in rec[4:]]
            out.append(ResultRow(axis, float(axis_value), scheme,
                                 seed if seed == "mean" else int(seed), *nums))
    return out
