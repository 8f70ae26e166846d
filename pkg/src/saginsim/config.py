"""INI configuration schema with fail-fast validation.

Sections mirror the simulator layers; unknown sections or keys are errors so
typos never silently fall back to defaults.  Derived quantities (linear SINR
threshold, hover exponent, orbital period) are resolved once at load time.
"""

import configparser
import dataclasses
from dataclasses import dataclass

import numpy as np

from .channel import A2GParams, GbsLinkParams, SRF_PRESETS, SRFParams
from .link import HoverModel, NoiseModel, hover_power
from .scenario import Satellite


class ConfigError(ValueError):
    pass


@dataclass
class SimConfig:
    # [scenario]
    area_x_m: float = 1000.0
    area_y_m: float = 1000.0
    total_users: int = 400
    gbs_max_users: int = 100
    uav_max_users: int = 200
    num_uavrs: int = 2
    uav_altitude_m: float = 100.0
    gbs_x_m: float = 500.0
    gbs_y_m: float = 500.0
    user_placement: str = "fixed"  # fixed | ppp
    hotspot_density_per_m2: float = 1e-3
    num_slots: int = 1
    slot_duration_s: float = 60.0
    # [satellite]
    altitude_m: float = 1000e3
    min_elevation_deg: float = 10.0
    polar_angle_rad: float = 0.0
    earth_radius_m: float = 6371e3
    orbital_period_s: float = 0.0  # 0 = circular-orbit Kepler period
    tx_power_dbm: float = 50.0
    sat_user_gain_db: float = -35.0
    sat_uav_gain_db: float = -25.0
    srf_preset: str = "average"  # average | heavy
    # [channel]
    a: float = 9.61
    b: float = 0.16
    eta_los_db: float = 1.0
    eta_nlos_db: float = 20.0
    fc_hz: float = 2.4e9
    alpha_exp: float = 2.0
    noise_psd_dbm_hz: float = -174.0
    a2g_gain_model: str = "pathloss-only"  # as-printed | pathloss-only
    a2g_small_scale: str = "unit"  # unit | rayleigh
    link_quality: str = "mean"  # mean | sampled
    # [link]
    bw_uav_user_hz: float = 20e6
    bw_sat_uav_hz: float = 20e6
    bw_sat_user_hz: float = 20e6
    bw_gbs_hz: float = 20e6
    gbs_tx_power_dbm: float = 40.0
    uav_tx_power_max_dbm: float = 20.0
    sinr_threshold_db: float = 3.0
    gbs_ant_gain_db: float = 10.5
    gbs_ref_distance_m: float = 750.0
    hover_p0_w: float = 50.0
    hover_delta: float = 0.1
    hover_epsilon_per_m: float = 0.0  # 0 = calibrate from hover_power_w
    hover_power_w: float = 58.0
    antennas: int = 2
    pl_max_db: float = 119.0
    fairness_threshold: float = 0.9
    # [experiments]
    trials: int = 20
    base_seed: int = 42

    # ---- derived builders -------------------------------------------------

    @property
    def area(self):
        return (self.area_x_m, self.area_y_m)

    @property
    def gamma_th_linear(self) -> float:
        return 10.0 ** (self.sinr_threshold_db / 10.0)

    @property
    def sat_tx_power_w(self) -> float:
        return 10.0 ** (self.tx_power_dbm / 10.0) * 1e-3

    @property
    def gbs_tx_power_w(self) -> float:
        return 10.0 ** (self.gbs_tx_power_dbm / 10.0) * 1e-3

    @property
    def uav_tx_power_max_w(self) -> float:
        return 10.0 ** (self.uav_tx_power_max_dbm / 10.0) * 1e-3

    def a2g_params(self) -> A2GParams:
        return A2GParams(a=self.a, b=self.b, eta_los_db=self.eta_los_db,
                         eta_nlos_db=self.eta_nlos_db, fc_hz=self.fc_hz,
                         alpha_exp=self.alpha_exp)

    def srf_params(self) -> SRFParams:
        return SRFParams(**SRF_PRESETS[self.srf_preset])

    def noise_model(self) -> NoiseModel:
        return NoiseModel.from_dbm_per_hz(self.noise_psd_dbm_hz, self.bw_uav_user_hz,
                                          self.bw_sat_uav_hz, self.bw_sat_user_hz,
                                          self.bw_gbs_hz)

    def hover_model(self) -> HoverModel:
        floor = self.hover_p0_w * (1.0 + self.hover_delta)
        if self.hover_epsilon_per_m > 0:
            return HoverModel(self.hover_p0_w, self.hover_delta, self.hover_epsilon_per_m)
        if self.hover_power_w <= floor:
            raise ConfigError("hover_power_w must exceed hover_p0_w*(1+hover_delta) "
                              "to calibrate hover_epsilon_per_m")
        eps = 2.0 * np.log(self.hover_power_w / floor) / self.uav_altitude_m
        return HoverModel(self.hover_p0_w, self.hover_delta, eps)

    def gbs_link_params(self) -> GbsLinkParams:
        return GbsLinkParams(fc_hz=self.fc_hz, alpha_exp=self.alpha_exp,
                             ant_gain_db=self.gbs_ant_gain_db,
                             ref_distance_m=self.gbs_ref_distance_m)

    def satellite(self) -> Satellite:
        return Satellite.build(altitude=self.altitude_m, tx_power=self.sat_tx_power_w,
                               earth_radius=self.earth_radius_m,
                               min_elevation_rad=np.radians(self.min_elevation_deg),
                               polar_angle=self.polar_angle_rad,
                               orbital_period=self.orbital_period_s)

    def replace(self, **kwargs) -> "SimConfig":
        return dataclasses.replace(self, **kwargs)


_CHOICES = {
    "user_placement": ("fixed", "ppp"),
    "srf_preset": tuple(SRF_PRESETS),
    "a2g_gain_model": ("as-printed", "pathloss-only"),
    "a2g_small_scale": ("unit", "rayleigh"),
    "link_quality": ("mean", "sampled"),
}

SCHEMA = {
    "scenario": ("area_x_m", "area_y_m", "total_users", "gbs_max_users", "uav_max_users",
                 "num_uavrs", "uav_altitude_m", "gbs_x_m", "gbs_y_m", "user_placement",
                 "hotspot_density_per_m2", "num_slots", "slot_duration_s"),
    "satellite": ("altitude_m", "min_elevation_deg", "polar_angle_rad", "earth_radius_m",
                  "orbital_period_s", "tx_power_dbm", "sat_user_gain_db", "sat_uav_gain_db",
                  "srf_preset"),
    "channel": ("a", "b", "eta_los_db", "eta_nlos_db", "fc_hz", "alpha_exp",
                "noise_psd_dbm_hz", "a2g_gain_model", "a2g_small_scale", "link_quality"),
    "link": ("bw_uav_user_hz", "bw_sat_uav_hz", "bw_sat_user_hz", "bw_gbs_hz",
             "gbs_tx_power_dbm", "uav_tx_power_max_dbm", "sinr_threshold_db",
             "gbs_ant_gain_db", "gbs_ref_distance_m", "hover_p0_w", "hover_delta",
             "hover_epsilon_per_m", "hover_power_w", "antennas", "pl_max_db",
             "fairness_threshold"),
    "experiments": ("trials", "base_seed"),
}


def _parse_value(key, raw):
    default = getattr(SimConfig, key)
    if isinstance(default, str):
        return raw.strip()
    if isinstance(default, int) and not isinstance(default, bool):
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"key '{key}' expects an integer, got {raw!r}") from exc
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"key '{key}' expects a number, got {raw!r}") from exc


def load_config(path) -> SimConfig:
    """Parse an INI file onto the defaults; unknown names fail fast."""
    parser = configparser.ConfigParser(interpolation=None)
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    values = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key, raw in parser.items(section):
            if key not in SCHEMA[section]:
                raise ConfigError(f"unknown key '{key}' in section [{section}]")
            values[key] = _parse_value(key, raw)
    cfg = SimConfig(**values)
    validate_config(cfg)
    return cfg


def validate_config(cfg: SimConfig) -> None:
    """Raise ConfigError naming the first inconsistent key."""
    positive = ("area_x_m", "area_y_m", "uav_altitude_m", "altitude_m", "earth_radius_m",
                "fc_hz", "alpha_exp", "bw_uav_user_hz", "bw_sat_uav_hz", "bw_sat_user_hz",
                "bw_gbs_hz", "hover_p0_w", "hover_power_w", "gbs_ref_distance_m",
                "hotspot_density_per_m2", "slot_duration_s", "fairness_threshold")
    for key in positive:
        if getattr(cfg, key) <= 0:
            raise ConfigError(f"key '{key}' must be positive")
    nonneg_int = ("total_users", "gbs_max_users", "uav_max_users", "num_uavrs",
                  "num_slots", "trials")
    for key in nonneg_int:
        if getattr(cfg, key) < 0:
            raise ConfigError(f"key '{key}' must be >= 0")
    if cfg.num_slots < 1:
        raise ConfigError("key 'num_slots' must be >= 1")
    if cfg.trials < 1:
        raise ConfigError("key 'trials' must be >= 1")
    if not 1 <= cfg.antennas <= 8:
        raise ConfigError("key 'antennas' must be in [1, 8]")
    for key, choices in _CHOICES.items():
        if getattr(cfg, key) not in choices:
            raise ConfigError(f"key '{key}' must be one of {choices}")
    if not (0 <= cfg.gbs_x_m <= cfg.area_x_m and 0 <= cfg.gbs_y_m <= cfg.area_y_m):
        raise ConfigError("keys 'gbs_x_m'/'gbs_y_m' must lie inside the area")
    if not (0 < cfg.min_elevation_deg < 90):
        raise ConfigError("key 'min_elevation_deg' must be in (0, 90)")
    try:
        cfg.a2g_params()
    except ValueError as exc:
        raise ConfigError(f"channel constants invalid: {exc}") from exc
    # Declared hover power must agree with the model at the operating altitude.
    model = cfg.hover_model()
    got = hover_power(cfg.uav_altitude_m, model)
    if abs(got - cfg.hover_power_w) > 0.1:
        raise ConfigError(
            f"key 'hover_power_w' ({cfg.hover_power_w}) disagrees with the hover model "
            f"at uav_altitude_m ({got:.3f} W)")
