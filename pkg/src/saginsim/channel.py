"""Propagation and fading models for all three network tiers.

Air-to-ground links mix LoS/NLoS free-space losses through an elevation-angle
dependent LoS probability.  Satellite links carry a shadowed-Rician amplitude
over a power-law loss; the terrestrial ground-station link is Rayleigh.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

C_LIGHT = 299792458.0  # m/s

A2G_GAIN_MODELS = ("as-printed", "pathloss-only")


class FadingSource(Enum):
    RAYLEIGH = "rayleigh"
    SHADOWED_RICIAN = "shadowed-rician"
    A2G_SMALL_SCALE = "a2g-small-scale"


@dataclass
class FadingSample:
    """One complex small-scale fading draw, tagged with its generator."""

    value: complex
    source: FadingSource

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise ValueError("fading sample must be finite")


def _fade_value(fade):
    """Accept a FadingSample, a bare complex, or an ndarray of draws."""
    return fade.value if isinstance(fade, FadingSample) else fade


@dataclass
class A2GParams:
    """Environment constants of the air-to-ground LoS probability model.

    a, b are the sigmoid fit constants; eta terms are excess losses in dB on
    top of free space.  beta_db collects the distance-independent part of the
    average path loss: 20*log10(4*pi*fc/c) + eta_nlos.
    """

    a: float
    b: float
    eta_los_db: float
    eta_nlos_db: float
    fc_hz: float
    light_speed: float = C_LIGHT
    alpha_exp: float = 2.0

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("sigmoid constants a, b must be positive")
        if not (self.eta_nlos_db > self.eta_los_db >= 0):
            raise ValueError("require eta_nlos_db > eta_los_db >= 0")
        if self.fc_hz <= 0 or self.light_speed <= 0:
            raise ValueError("carrier frequency and light speed must be positive")

    @property
    def beta_db(self) -> float:
        return 20.0 * np.log10(4.0 * np.pi * self.fc_hz / self.light_speed) + self.eta_nlos_db


# Urban fit constants; eta values are the standard 2.4 GHz excess losses.
URBAN_A2G = dict(a=9.61, b=0.16, eta_los_db=1.0, eta_nlos_db=20.0)


@dataclass
class SRFParams:
    """Shadowed-Rician fading parameters.

    direct_power is the mean square of the Nakagami-m LoS amplitude,
    scatter_half_power the per-dimension variance of the complex-Gaussian
    scatter term, nakagami_m the LoS shape.  avg_gain is the deterministic
    mean power used for long-term link budgets; it defaults to the analytic
    mean 2*scatter_half_power + direct_power.
    """

    direct_power: float
    scatter_half_power: float
    nakagami_m: float
    avg_gain: float = None

    def __post_init__(self):
        if self.direct_power < 0:
            raise ValueError("direct_power must be >= 0")
        if self.scatter_half_power <= 0:
            raise ValueError("scatter_half_power must be > 0")
        if self.nakagami_m < 0.5:
            raise ValueError("nakagami_m must be >= 0.5")
        if self.avg_gain is None:
            self.avg_gain = self.mean_power
        elif self.avg_gain <= 0:
            raise ValueError("avg_gain must be positive")

    @property
    def mean_power(self) -> float:
        return self.direct_power + 2.0 * self.scatter_half_power


SRF_AVERAGE_SHADOWING = dict(direct_power=0.835, scatter_half_power=0.126, nakagami_m=10.1)
SRF_HEAVY_SHADOWING = dict(direct_power=8.97e-4, scatter_half_power=0.063, nakagami_m=0.739)
SRF_PRESETS = {"average": SRF_AVERAGE_SHADOWING, "heavy": SRF_HEAVY_SHADOWING}


def los_probability(theta_rad, p: A2GParams):
    """LoS probability 1/(1 + a*exp(-b*(theta_deg - a))) for theta in (0, pi/2]."""
    theta = np.asarray(theta_rad, dtype=float)
    if np.any(theta <= 0) or np.any(theta > np.pi / 2 + 1e-12):
        raise ValueError("elevation angle must lie in (0, pi/2]")
    theta_deg = np.degrees(theta)
    expo = np.clip(-p.b * (theta_deg - p.a), -500.0, 500.0)
    out = 1.0 / (1.0 + p.a * np.exp(expo))
    return float(out) if np.isscalar(theta_rad) else out


def free_space_loss_db(d_m, p: A2GParams):
    return 20.0 * np.log10(4.0 * np.pi * p.fc_hz * np.asarray(d_m, dtype=float) / p.light_speed)


def path_loss(d_m, theta_rad, p: A2GParams):
    """LoS, NLoS, and probability-averaged path loss in dB at distance d.

    The average uses the closed form (eta_los - eta_nlos)*P_los + 20*log10(d)
    + beta, algebraically identical to the P_los/P_nlos mixture.
    """
    d = np.asarray(d_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    fs = free_space_loss_db(d, p)
    pl_los = fs + p.eta_los_db
    pl_nlos = fs + p.eta_nlos_db
    p_los = los_probability(theta_rad, p)
    pl_avg = (p.eta_los_db - p.eta_nlos_db) * p_los + 20.0 * np.log10(d) + p.beta_db
    if np.isscalar(d_m) and np.isscalar(theta_rad):
        return float(pl_los), float(pl_nlos), float(pl_avg)
    return pl_los, pl_nlos, pl_avg


def a2g_channel_gain(d_m, theta_rad, small_scale, p: A2GParams, model: str = "as-printed"):
    """Composite UAV-user channel amplitude.

    model "as-printed" multiplies the wave-number distance factor
    (4*pi*fc*d/c)^(-alpha/2) on top of 10^(-pl_avg/20); "pathloss-only" keeps
    only the path-loss term.
    """
    if model not in A2G_GAIN_MODELS:
        raise ValueError(f"unknown a2g gain model {model!r}")
    d = np.asarray(d_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    _, _, pl_avg = path_loss(d, theta_rad, p)
    amp = 10.0 ** (-np.asarray(pl_avg) / 20.0)
    if model == "as-printed":
        amp = amp * (4.0 * np.pi * p.fc_hz * d / p.light_speed) ** (-p.alpha_exp / 2.0)
    out = _fade_value(small_scale) * amp
    return complex(out) if np.isscalar(d_m) and np.isscalar(theta_rad) else out


def a2g_mean_power_gain(d_m, theta_rad, p: A2GParams, model: str = "as-printed"):
    """Mean power of a2g_channel_gain under unit-power small-scale fading."""
    if model not in A2G_GAIN_MODELS:
        raise ValueError(f"unknown a2g gain model {model!r}")
    d = np.asarray(d_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    _, _, pl_avg = path_loss(d, theta_rad, p)
    gain = 10.0 ** (-np.asarray(pl_avg) / 10.0)
    if model == "as-printed":
        gain = gain * (4.0 * np.pi * p.fc_hz * d / p.light_speed) ** (-p.alpha_exp)
    return float(gain) if np.isscalar(d_m) and np.isscalar(theta_rad) else gain


def sat_channel_gain(d_m, srf: SRFParams, alpha: float):
    """Deterministic satellite-link amplitude sqrt(avg_gain * d^-alpha)."""
    d = np.asarray(d_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    out = np.sqrt(srf.avg_gain * d ** (-alpha))
    return float(out) if np.isscalar(d_m) else out


def sample_shadowed_rician(srf: SRFParams, rng: np.random.Generator, size=None):
    """Shadowed-Rician draws: Nakagami-m LoS amplitude plus CN scatter.

    Mean power over many draws is direct_power + 2*scatter_half_power.
    Returns a FadingSample for scalar draws, a complex ndarray when size is
    given.
    """
    n = 1 if size is None else size
    # Nakagami-m amplitude: power follows Gamma(shape=m, scale=power/m).
    if srf.direct_power > 0:
        los = np.sqrt(rng.gamma(srf.nakagami_m, srf.direct_power / srf.nakagami_m, n))
    else:
        los = np.zeros(n)
    sd = np.sqrt(srf.scatter_half_power)
    scatter = rng.normal(0.0, sd, n) + 1j * rng.normal(0.0, sd, n)
    out = los + scatter
    if size is None:
        return FadingSample(complex(out[0]), FadingSource.SHADOWED_RICIAN)
    return out


def sample_rayleigh(rng: np.random.Generator, size=None):
    """Unit-mean-power complex Gaussian draws."""
    n = 1 if size is None else size
    sd = np.sqrt(0.5)
    out = rng.normal(0.0, sd, n) + 1j * rng.normal(0.0, sd, n)
    if size is None:
        return FadingSample(complex(out[0]), FadingSource.RAYLEIGH)
    return out


def gbs_channel_gain(r_m, fade, alpha: float):
    """Ground-station channel amplitude fade * r^-alpha."""
    r = np.asarray(r_m, dtype=float)
    if np.any(r <= 0):
        raise ValueError("distance must be positive")
    out = _fade_value(fade) * r ** (-alpha)
    return complex(out) if np.isscalar(r_m) else out


@dataclass
class GbsLinkParams:
    """Anchored mean-power model for the ground-station link.

    The raw r^(-2*alpha) power law of gbs_channel_gain has no absolute level;
    link budgets anchor it with the wave constant (c/(4*pi*fc))^2, an antenna
    gain, and a far-field clamp at ref_distance_m (chosen >= the largest
    in-area distance so all users see the same mean gain).
    """

    fc_hz: float
    alpha_exp: float
    ant_gain_db: float
    ref_distance_m: float
    light_speed: float = C_LIGHT

    def __post_init__(self):
        if self.fc_hz <= 0 or self.ref_distance_m <= 0:
            raise ValueError("fc_hz and ref_distance_m must be positive")

    def mean_power_gain(self, r_m):
        r = np.maximum(np.asarray(r_m, dtype=float), self.ref_distance_m)
        g0 = (self.light_speed / (4.0 * np.pi * self.fc_hz)) ** 2 * 10.0 ** (self.ant_gain_db / 10.0)
        out = g0 * r ** (-2.0 * self.alpha_exp)
        return float(out) if np.isscalar(r_m) else out
