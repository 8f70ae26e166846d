"""Per-link SINR/SNR arithmetic, AF relay gain, interference, hover power."""

from dataclasses import dataclass

import numpy as np

from .channel import A2GParams, a2g_mean_power_gain
from .scenario import elevation_angle, horizontal_distance, slant_distance


def _power_sum(h_amp) -> float:
    """|h|^2 for a scalar amplitude or the squared norm of a branch vector."""
    h = np.asarray(h_amp)
    return float(np.sum(np.abs(h) ** 2))


@dataclass
class NoiseModel:
    """Thermal noise PSD and the per-link bandwidths; noise power is B*psd."""

    psd_w_per_hz: float
    bw_uav_user_hz: float
    bw_sat_uav_hz: float
    bw_sat_user_hz: float
    bw_gbs_hz: float

    def __post_init__(self):
        for name in ("psd_w_per_hz", "bw_uav_user_hz", "bw_sat_uav_hz",
                     "bw_sat_user_hz", "bw_gbs_hz"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_dbm_per_hz(cls, psd_dbm_hz, bw_uav_user_hz, bw_sat_uav_hz,
                        bw_sat_user_hz, bw_gbs_hz):
        psd = 10.0 ** (psd_dbm_hz / 10.0) * 1e-3
        return cls(psd, bw_uav_user_hz, bw_sat_uav_hz, bw_sat_user_hz, bw_gbs_hz)

    @property
    def noise_uav_user_w(self) -> float:
        return self.psd_w_per_hz * self.bw_uav_user_hz

    @property
    def noise_sat_uav_w(self) -> float:
        return self.psd_w_per_hz * self.bw_sat_uav_hz

    @property
    def noise_sat_user_w(self) -> float:
        return self.psd_w_per_hz * self.bw_sat_user_hz

    @property
    def noise_gbs_w(self) -> float:
        return self.psd_w_per_hz * self.bw_gbs_hz


def af_gain_sq(sat_uav_amp: float, sigma2: float) -> float:
    """Squared AF normalization 1/(|hbar|^2 + sigma2); fixed within a slot."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    return 1.0 / (abs(sat_uav_amp) ** 2 + sigma2)


def varsigma(af_gain_sq_value: float, sigma2: float) -> float:
    """Relay noise-amplification constant 1/(sigma2 * G^2)."""
    return 1.0 / (sigma2 * af_gain_sq_value)


@dataclass
class LinkBudget:
    """All SINR components of one user's cooperative path in one slot."""

    gamma_sat_user: float
    gamma_sat_uav: float
    gamma_uav_user: float
    af_gain_sq: float
    varsigma: float
    interference_w: float
    sigma2_w: float

    def __post_init__(self):
        for name in ("gamma_sat_user", "gamma_sat_uav", "gamma_uav_user",
                     "af_gain_sq", "varsigma", "interference_w"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        check = self.varsigma * self.af_gain_sq * self.sigma2_w
        if abs(check - 1.0) > 1e-9:
            raise ValueError("varsigma * G^2 * sigma2 must equal 1")


def interference_at_user(user, serving_id, all_uavrs, powers, channel: A2GParams) -> float:
    """Aggregate co-channel power from every relay other than the serving one.

    Per-interferer contribution is tx power times the average-path-loss gain
    10^(-PL_avg/10) at the user-interferer geometry.
    """
    total = 0.0
    for uav in all_uavrs:
        if uav.id == serving_id:
            continue
        p = powers.get(uav.id, 0.0) if isinstance(powers, dict) else powers[uav.id]
        if p <= 0:
            continue
        d = slant_distance(user, uav)
        theta = elevation_angle(user, uav)
        total += p * a2g_mean_power_gain(d, theta, channel, model="pathloss-only")
    return total


def sinr_uav_user(p_tx: float, h_amp, noise: NoiseModel, interference_w: float) -> float:
    if p_tx < 0:
        raise ValueError("transmit power must be >= 0")
    return p_tx * _power_sum(h_amp) / (noise.noise_uav_user_w + interference_w)


def snr_sat_uav(visible: int, p_s: float, hbar: float, noise: NoiseModel) -> float:
    if not visible:
        return 0.0
    return p_s * abs(hbar) ** 2 / noise.noise_sat_uav_w


def sinr_sat_user(visible: int, p_s: float, h_amp, noise: NoiseModel,
                  interference_w: float) -> float:
    if not visible:
        return 0.0
    return p_s * _power_sum(h_amp) / (noise.noise_sat_user_w + interference_w)


def snr_gbs_user(p_g: float, h_amp, noise: NoiseModel) -> float:
    if p_g < 0:
        raise ValueError("transmit power must be >= 0")
    return p_g * _power_sum(h_amp) / noise.noise_gbs_w


@dataclass
class HoverModel:
    """Altitude-exponential hover power p0*(1+delta)*exp(epsilon*h/2)."""

    p0_w: float = 50.0
    delta: float = 0.1
    epsilon_per_m: float = np.log(58.0 / 55.0) / 50.0

    def __post_init__(self):
        if self.p0_w <= 0 or self.epsilon_per_m <= 0:
            raise ValueError("p0_w and epsilon_per_m must be positive")


def hover_power(h_m: float, m: HoverModel = HoverModel()) -> float:
    if h_m < 0:
        raise ValueError("altitude must be >= 0")
    return m.p0_w * (1.0 + m.delta) * np.exp(m.epsilon_per_m * h_m / 2.0)


def altitude_from_power(p_w: float, m: HoverModel = HoverModel()) -> float:
    """Inverse of hover_power on its valid range p >= p0*(1+delta)."""
    floor = m.p0_w * (1.0 + m.delta)
    if p_w < floor:
        raise ValueError("power below the zero-altitude hover floor")
    return 2.0 * np.log(p_w / floor) / m.epsilon_per_m
