"""Decision layer: coverage geometry, relay placement over hotspots,
per-user power allocation, and the four end-to-end scheme drivers."""

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import association as assoc_mod
from .association import AssociationMap, score_network, shannon_rate
from .channel import A2GParams, a2g_mean_power_gain, sample_rayleigh, sample_shadowed_rician
from .combining import max_sinr_closed_form
from .link import af_gain_sq, hover_power, varsigma
from .scenario import (Hotspot, ScenarioState, UavRelay, detect_hotspots,
                       elevation_angle, satellite_slant_range, satellite_visibility,
                       slant_distance)

GOLDEN_RATIO = (np.sqrt(5.0) - 1.0) / 2.0


class NoRootError(ValueError):
    pass


class SchemeId(Enum):
    AMUD_SAGIN = "amud"
    EGC_SAGIN = "egc"
    LEO_GBS = "leo-gbs"
    GBS_ONLY = "gbs-only"


def elevation_residual(theta_rad, a, b, delta_eta_db):
    """Stationarity residual of the average path loss in the elevation angle.

    pi*tan(theta)/(9*ln10) + a*b*A*exp(-b*(theta_deg - a)) /
    (a*exp(-b*(theta_deg - a)) + 1)^2 with A the LoS-NLoS excess-loss gap.
    """
    theta = np.asarray(theta_rad, dtype=float)
    theta_deg = np.degrees(theta)
    e = np.exp(np.clip(-b * (theta_deg - a), -500.0, 500.0))
    term1 = np.pi * np.tan(theta) / (9.0 * np.log(10.0))
    term2 = a * b * delta_eta_db * e / (a * e + 1.0) ** 2
    out = term1 + term2
    return float(out) if np.isscalar(theta_rad) else out


def solve_optimal_angle(a, b, delta_eta_db, tol=1e-12, max_iter=200) -> float:
    """Bracketing bisection for the unique residual root in (0, pi/2)."""
    lo, hi = 1e-9, np.pi / 2 - 1e-9
    f_lo, f_hi = elevation_residual(lo, a, b, delta_eta_db), elevation_residual(hi, a, b, delta_eta_db)
    if f_lo * f_hi > 0:
        raise NoRootError("residual has no sign change in (0, pi/2)")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = elevation_residual(mid, a, b, delta_eta_db)
        if abs(f_mid) < tol:
            return mid
        if f_lo * f_mid <= 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def optimal_elevation_angle(p: A2GParams) -> float:
    """Elevation angle minimizing the average path loss per unit coverage."""
    return solve_optimal_angle(p.a, p.b, p.eta_los_db - p.eta_nlos_db)


def coverage_radius(h_m: float, theta_opt: float) -> float:
    if h_m <= 0:
        raise ValueError("altitude must be positive")
    if not 0 < theta_opt < np.pi / 2:
        raise ValueError("theta_opt must lie in (0, pi/2)")
    return h_m / np.tan(theta_opt)


def max_los_distance(radius_max: float, theta_opt: float) -> float:
    if not 0 < theta_opt < np.pi / 2:
        raise ValueError("theta_opt must lie in (0, pi/2)")
    return radius_max / np.cos(theta_opt)


@dataclass
class CoverageDesign:
    """Coverage geometry derived from the optimal elevation angle."""

    theta_opt: float
    radius: float
    radius_max: float
    d_max: float
    h_max: float
    pl_max_db: float

    @classmethod
    def from_env(cls, p: A2GParams, altitude_m: float, pl_max_db: float = 119.0):
        theta = optimal_elevation_angle(p)
        radius = coverage_radius(altitude_m, theta)
        return cls(theta_opt=theta, radius=radius, radius_max=radius,
                   d_max=max_los_distance(radius, theta), h_max=altitude_m,
                   pl_max_db=pl_max_db)


def place_uavrs(hotspots, k: int, r_max: float, design: CoverageDesign, area) -> list:
    """Centroid placement, largest hotspot first, with pairwise separation.

    Any pair closer than r_max is pushed apart symmetrically along the
    connecting line; positions are clipped to the area each pass.
    """
    if k == 0:
        if hotspots:
            warnings.warn("no relay capacity for detected hotspots")
        return []
    order = sorted(hotspots, key=lambda hs: (-len(hs.member_users), hs.kind.value,
                                             hs.sector_center[0], hs.sector_center[1]))
    positions = [np.array(hs.sector_center, dtype=float) for hs in order[:k]]
    for _ in range(100):
        moved = False
        for i in range(len(positions)):
            for j in range(i + 1, len(positions)):
                diff = positions[i] - positions[j]
                d = float(np.linalg.norm(diff))
                if d >= r_max - 1e-12:
                    continue
                direction = diff / d if d > 0 else np.array([1.0, 0.0])
                shift = 0.5 * (r_max - d)
                positions[i] = positions[i] + direction * shift
                positions[j] = positions[j] - direction * shift
                moved = True
        for p in positions:
            p[0] = min(max(p[0], 0.0), area[0])
            p[1] = min(max(p[1], 0.0), area[1])
        if not moved:
            break
    return positions


def min_power(gamma_th: float, bandwidth_hz: float, sigma2_psd: float,
              interference_w: float, h_norm_sq: float) -> float:
    """Smallest relay power meeting the SINR threshold on the relay-user link."""
    if h_norm_sq <= 0:
        raise ValueError("dead channel: h_norm_sq must be positive")
    return gamma_th * (bandwidth_hz * sigma2_psd + interference_w) / h_norm_sq


def optimize_power(pair, p_min: float, p_max: float, ee_objective,
                   tol: float = 1e-6, max_iter: int = 200, grid_points: int = 64) -> float:
    """Golden-section maximization of the EE objective over [p_min, p_max].

    A coarse grid scan guards against non-unimodal objectives; the clipping
    ladder then applies: clamp into [p_min, p_max] when feasible, otherwise
    commit p_max.
    """
    if p_max <= 0:
        raise ValueError("p_max must be positive")
    if p_min > p_max:
        return p_max
    lo, hi = p_min, p_max
    if hi - lo > tol:
        x1 = hi - GOLDEN_RATIO * (hi - lo)
        x2 = lo + GOLDEN_RATIO * (hi - lo)
        f1, f2 = ee_objective(x1), ee_objective(x2)
        for _ in range(max_iter):
            if hi - lo <= tol:
                break
            if f1 < f2:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + GOLDEN_RATIO * (hi - lo)
                f2 = ee_objective(x2)
            else:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - GOLDEN_RATIO * (hi - lo)
                f1 = ee_objective(x1)
    best = 0.5 * (lo + hi)
    best_val = ee_objective(best)
    for p in np.linspace(p_min, p_max, grid_points):
        v = ee_objective(float(p))
        if v > best_val:
            best, best_val = float(p), v
    return min(max(best, p_min), p_max)


# ---------------------------------------------------------------------------
# Scheme drivers


class _LinkState:
    """Mean or sampled channel powers for one slot, shared across schemes."""

    def __init__(self, state: ScenarioState, cfg, seed):
        self.cfg = cfg
        self.noise = cfg.noise_model()
        self.a2g = cfg.a2g_params()
        self.srf = cfg.srf_params()
        self.gbs_link = cfg.gbs_link_params()
        self.sampled = cfg.link_quality == "sampled"
        self.rng = np.random.default_rng(seed)
        self.ell = cfg.antennas

        sat = state.satellite
        t = state.slot_time_s
        self.visible = satellite_visibility(sat, t)
        self.d_sat = satellite_slant_range(sat, t)
        self.sat_tx_power = sat.tx_power
        n = len(state.users)
        pos = state.user_positions()
        self.gbs_r = np.linalg.norm(pos - state.gbs.position, axis=1)

        base_sat = self.srf.mean_power * self.d_sat ** (-cfg.alpha_exp)
        gain_user = 10.0 ** (cfg.sat_user_gain_db / 10.0)
        gain_uav = 10.0 ** (cfg.sat_uav_gain_db / 10.0)
        if self.sampled:
            draws = sample_shadowed_rician(self.srf, self.rng, size=(n, self.ell))
            unit = np.abs(draws) ** 2 / self.srf.mean_power
            self.h_sat_user_sq = gain_user * base_sat * unit.sum(axis=1)
            g_fade = np.abs(sample_rayleigh(self.rng, size=n)) ** 2
            self.gbs_gain = self.gbs_link.mean_power_gain(self.gbs_r) * g_fade
        else:
            self.h_sat_user_sq = np.full(n, self.ell * gain_user * base_sat)
            self.gbs_gain = self.gbs_link.mean_power_gain(self.gbs_r)
        self._uav_base = gain_uav * base_sat

        p_s = sat.tx_power
        self.gamma_sat = self.visible * p_s * self.h_sat_user_sq / self.noise.noise_sat_user_w
        self.gamma_gbs = cfg.gbs_tx_power_w * self.gbs_gain / self.noise.noise_gbs_w

    def relay_constants(self):
        """(hbar_sq, G^2, varsigma, gamma_hop1) of the satellite-relay link."""
        hbar_sq = self._uav_base
        if self.sampled:
            draw = sample_shadowed_rician(self.srf, self.rng, size=1)[0]
            hbar_sq = hbar_sq * abs(draw) ** 2 / self.srf.mean_power
        sigma2 = self.noise.noise_sat_uav_w
        g2 = af_gain_sq(np.sqrt(hbar_sq), sigma2)
        vs = varsigma(g2, sigma2)
        g1 = self.visible * self.sat_tx_power * hbar_sq / sigma2
        return hbar_sq, g2, vs, g1

    def a2g_power_gain(self, user, uav) -> float:
        """L-antenna relay-user channel power under the configured gain model."""
        d = slant_distance(user, uav)
        theta = elevation_angle(user, uav)
        gain = a2g_mean_power_gain(d, theta, self.a2g, model=self.cfg.a2g_gain_model)
        if self.sampled and self.cfg.a2g_small_scale == "rayleigh":
            fade = np.abs(sample_rayleigh(self.rng, size=self.ell)) ** 2
            return gain * float(fade.sum())
        return self.ell * gain


def _gbs_admission(state: ScenarioState, links: _LinkState):
    """Nearest-first admission up to the ground-station cap."""
    order = sorted(range(len(state.users)), key=lambda i: (links.gbs_r[i], i))
    take = min(state.gbs.max_users, len(order))
    gbs_set = set(order[:take])
    excess = [i for i in order[take:]]
    excess.sort(key=lambda i: (links.gamma_gbs[i], i))  # worst-served first
    return gbs_set, excess


def _deploy(state: ScenarioState, cfg, design: CoverageDesign, hover_w: float):
    """Hotspot detection and collision-safe placement; mutates state.uavrs."""
    state.coverage_radius_m = design.radius
    state.density_threshold_per_m2 = cfg.hotspot_density_per_m2
    hotspots = detect_hotspots(state)
    positions = place_uavrs(hotspots, cfg.num_uavrs, design.radius_max, design, cfg.area)
    state.uavrs = [UavRelay(j, np.array([p[0], p[1], cfg.uav_altitude_m]),
                            design.radius, hover_w)
                   for j, p in enumerate(positions)]
    return state.uavrs


def run_scheme(scheme: SchemeId, state: ScenarioState, params, seed: int):
    """Execute one scheme on one slot and return (AssociationMap, NetworkScore).

    All schemes admit ground-station users nearest-first up to the cap.  The
    cooperative schemes then detect hotspots, deploy relays, and re-associate
    gated excess users to the relay+satellite path with per-user power
    optimization; the satellite-direct scheme serves all visible excess users
    on the direct link; the terrestrial-only scheme drops them.
    """
    cfg = params
    from .config import validate_config
    validate_config(cfg)
    if isinstance(scheme, str):
        scheme = SchemeId(scheme)

    links = _LinkState(state, cfg, seed)
    n = len(state.users)
    gbs_set, excess = _gbs_admission(state, links)
    state.gbs_user_ids = frozenset(gbs_set)

    assoc = AssociationMap(gbs_users=set(gbs_set))
    rates = np.zeros(n)
    sinr = np.zeros(n)
    for i in gbs_set:
        rates[i] = assoc_mod.gbs_rate(links.gamma_gbs[i], cfg.bw_gbs_hz, 1)
        sinr[i] = links.gamma_gbs[i]
    qos_short = 0
    gamma_th = cfg.gamma_th_linear
    state.uavrs = []

    if scheme is SchemeId.GBS_ONLY or not links.visible:
        assoc.dropped = set(excess)
    elif scheme is SchemeId.LEO_GBS:
        for i in excess:
            assoc.sat_users.add(i)
            rates[i] = shannon_rate(links.gamma_sat[i], cfg.bw_sat_user_hz)
            sinr[i] = links.gamma_sat[i]
            if links.gamma_sat[i] < gamma_th:
                qos_short += 1
    else:
        design = CoverageDesign.from_env(links.a2g, cfg.uav_altitude_m, cfg.pl_max_db)
        hover_w = hover_power(cfg.uav_altitude_m, cfg.hover_model())
        uavrs = _deploy(state, cfg, design, hover_w)
        _, _, vs, gamma_1 = links.relay_constants()
        p_max = cfg.uav_tx_power_max_w
        noise_uu = links.noise.noise_uav_user_w

        # Interference at each user from every non-serving deployed relay,
        # modeled at the power cap.
        h_uav = np.zeros((n, len(uavrs)))
        interf = np.zeros((n, len(uavrs)))
        in_cover = np.zeros((n, len(uavrs)), dtype=bool)
        for j, uav in enumerate(uavrs):
            for i in range(n):
                h_uav[i, j] = links.a2g_power_gain(state.users[i], uav)
                r = np.linalg.norm(state.users[i].position - uav.position[:2])
                in_cover[i, j] = r <= uav.coverage_radius
        for j in range(len(uavrs)):
            other = [k for k in range(len(uavrs)) if k != j]
            if other:
                interf[:, j] = p_max * h_uav[:, other].sum(axis=1)

        def cd_sinr_at(i, j, p):
            g_uu = p * h_uav[i, j] / (noise_uu + interf[i, j])
            relay = gamma_1 * g_uu / (g_uu + vs) if g_uu + vs > 0 else 0.0
            if scheme is SchemeId.EGC_SAGIN:
                return 0.5 * (links.gamma_sat[i] + relay)
            return links.gamma_sat[i] + relay

        assoc.uav_users = {uav.id: set() for uav in uavrs}
        committed_c = float(rates.sum())
        committed_p = (len(gbs_set) * cfg.gbs_tx_power_w
                       + sum(u.hover_power for u in uavrs)
                       + state.satellite.tx_power)
        for i in excess:
            if links.gamma_sat[i] >= gamma_th:
                # Direct link already meets QoS; no re-association.
                assoc.sat_users.add(i)
                rates[i] = shannon_rate(links.gamma_sat[i], cfg.bw_sat_user_hz)
                sinr[i] = links.gamma_sat[i]
                continue
            cands = [j for j in range(len(uavrs))
                     if in_cover[i, j] and len(assoc.uav_users[uavrs[j].id]) < cfg.uav_max_users]
            if not cands:
                assoc.sat_users.add(i)
                rates[i] = shannon_rate(links.gamma_sat[i], cfg.bw_sat_user_hz)
                sinr[i] = links.gamma_sat[i]
                qos_short += 1
                continue
            j = max(cands, key=lambda jj: (cd_sinr_at(i, jj, p_max), -jj))
            p_min = min_power(gamma_th, cfg.bw_uav_user_hz, links.noise.psd_w_per_hz,
                              interf[i, j], h_uav[i, j])

            def ee_obj(p, i=i, j=j):
                rate = assoc_mod.cd_rate(cd_sinr_at(i, j, p), cfg.bw_uav_user_hz, 1)
                return (committed_c + rate) / (committed_p + p)

            p_star = optimize_power((i, uavrs[j].id), p_min, p_max, ee_obj)
            gamma_cd = cd_sinr_at(i, j, p_star)
            if gamma_cd < gamma_th:
                qos_short += 1
            assoc.uav_users[uavrs[j].id].add(i)
            assoc.powers[i] = p_star
            rates[i] = assoc_mod.cd_rate(gamma_cd, cfg.bw_uav_user_hz, 1)
            sinr[i] = gamma_cd
            committed_c += rates[i]
            committed_p += p_star

    assoc.validate(n, state.gbs.max_users, cfg.uav_max_users)
    score = score_network(assoc, rates, state.uavrs, state.satellite, state.gbs,
                          fairness_threshold=cfg.fairness_threshold,
                          qos_shortfalls=qos_short, per_user_sinr=sinr,
                          gamma_sat=links.gamma_sat)
    return assoc, score
