"""Association bookkeeping and capacity / power / fairness scoring."""

from dataclasses import dataclass, field

import numpy as np

from .scenario import GroundStation, horizontal_distance


@dataclass
class AssociationMap:
    """Per-slot serving assignment.

    Each non-dropped user is on exactly one path: ground station, one relay
    (cooperative path), or the direct satellite link.  powers holds the
    committed relay transmit power per cooperative user.
    """

    gbs_users: set = field(default_factory=set)
    uav_users: dict = field(default_factory=dict)  # uavr id -> set of user ids
    sat_users: set = field(default_factory=set)
    powers: dict = field(default_factory=dict)  # user id -> watts
    dropped: set = field(default_factory=set)

    def delta_gbs(self, user_id) -> int:
        return int(user_id in self.gbs_users)

    def delta_uav(self, user_id, uavr_id) -> int:
        return int(user_id in self.uav_users.get(uavr_id, ()))

    def serving(self, user_id):
        if user_id in self.gbs_users:
            return "gbs"
        for j, members in self.uav_users.items():
            if user_id in members:
                return ("uav", j)
        if user_id in self.sat_users:
            return "sat"
        return None

    def all_uav_users(self) -> set:
        out = set()
        for members in self.uav_users.values():
            out |= members
        return out

    def uses_satellite_path(self) -> bool:
        return bool(self.sat_users) or bool(self.all_uav_users())

    def validate(self, num_users, gbs_max, uav_max):
        """Raise on any broken association invariant."""
        buckets = [self.gbs_users, self.sat_users, self.dropped] + list(self.uav_users.values())
        seen = set()
        for b in buckets:
            if b & seen:
                raise ValueError(f"multiply-associated users: {sorted(b & seen)}")
            seen |= b
        if seen != set(range(num_users)):
            raise ValueError("association does not partition the user set")
        if len(self.gbs_users) > gbs_max:
            raise ValueError("ground-station load cap violated")
        for j, members in self.uav_users.items():
            if len(members) > uav_max:
                raise ValueError(f"relay {j} load cap violated")


@dataclass
class NetworkScore:
    """Slot-level aggregate metrics.

    capacity_total = capacity_uav + capacity_gbs + capacity_sat; the direct
    satellite bucket is zero for schemes that never use that path.
    """

    capacity_uav: float
    capacity_gbs: float
    capacity_sat: float
    capacity_total: float
    power_total: float
    energy_eff: float
    fairness: float
    per_user_rates: np.ndarray
    served: int
    dropped: int
    fairness_ok: bool
    qos_shortfalls: int
    per_user_sinr: np.ndarray = None
    gamma_sat: np.ndarray = None


def shannon_rate(sinr: float, bandwidth_hz: float) -> float:
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    if sinr < 0:
        raise ValueError("SINR must be >= 0")
    return bandwidth_hz * np.log2(1.0 + sinr)


def gbs_indicator(assoc: AssociationMap, gbs: GroundStation) -> int:
    """1 iff the ground-station load is within its cap."""
    return int(len(assoc.gbs_users) <= gbs.max_users)


def uav_association_indicator(user, uavr, sinr_cd: float, gamma_th: float) -> int:
    """1 iff the combined SINR meets the threshold and the user is in coverage."""
    if gamma_th <= 0:
        raise ValueError("gamma_th must be positive")
    r = horizontal_distance(user, uavr)
    return int(sinr_cd >= gamma_th and r <= uavr.coverage_radius)


def cd_rate(sinr_cd: float, bandwidth_hz: float, delta: int) -> float:
    """Half-bandwidth Shannon rate of the two-phase cooperative path."""
    return 0.5 * shannon_rate(sinr_cd, bandwidth_hz) * (1 if delta else 0)


def gbs_rate(snr: float, bandwidth_hz: float, delta: int) -> float:
    """Full-bandwidth Shannon rate of a single-phase link."""
    return shannon_rate(snr, bandwidth_hz) * (1 if delta else 0)


def total_capacity(assoc: AssociationMap, rates) -> float:
    """Sum of served users' rates; dropped users contribute zero."""
    rates = np.asarray(rates, dtype=float)
    total = 0.0
    for i in range(len(rates)):
        if i not in assoc.dropped:
            total += rates[i]
    return float(total)


def total_power(assoc: AssociationMap, uavrs, sat, gbs) -> float:
    """Hover plus relay transmit power per deployed relay, satellite power
    when any satellite-path user is served, and the per-user GBS term."""
    p = 0.0
    for uav in uavrs:
        p += uav.hover_power
        for i in assoc.uav_users.get(uav.id, ()):
            p += assoc.powers.get(i, 0.0)
    if assoc.uses_satellite_path():
        p += sat.tx_power
    p += len(assoc.gbs_users) * gbs.tx_power_per_user
    return p


def energy_efficiency(capacity: float, power: float) -> float:
    if power <= 0:
        raise ValueError("power must be positive")
    return capacity / power


def jain_fairness(rates) -> float:
    """(sum r)^2 / (N sum r^2) over all users; all-zero defined as 0."""
    rates = np.asarray(rates, dtype=float)
    if rates.size < 1:
        raise ValueError("need at least one rate")
    sq = float(np.sum(rates ** 2))
    if sq == 0.0:
        return 0.0
    return float(np.sum(rates)) ** 2 / (rates.size * sq)


def score_network(assoc: AssociationMap, rates, uavrs, sat, gbs,
                  fairness_threshold: float = 0.9,
                  qos_shortfalls: int = 0,
                  per_user_sinr=None, gamma_sat=None) -> NetworkScore:
    """Assemble the slot score from a committed association and rate vector."""
    rates = np.asarray(rates, dtype=float)
    cap_uav = float(sum(rates[i] for i in assoc.all_uav_users()))
    cap_gbs = float(sum(rates[i] for i in assoc.gbs_users))
    cap_sat = float(sum(rates[i] for i in assoc.sat_users))
    cap_total = total_capacity(assoc, rates)
    power = total_power(assoc, uavrs, sat, gbs)
    ee = energy_efficiency(cap_total, power) if power > 0 else 0.0
    fairness = jain_fairness(rates)
    served = len(rates) - len(assoc.dropped)
    return NetworkScore(
        capacity_uav=cap_uav, capacity_gbs=cap_gbs, capacity_sat=cap_sat,
        capacity_total=cap_total, power_total=power, energy_eff=ee,
        fairness=fairness, per_user_rates=rates, served=served,
        dropped=len(assoc.dropped), fairness_ok=fairness >= fairness_threshold,
        qos_shortfalls=qos_shortfalls,
        per_user_sinr=None if per_user_sinr is None else np.asarray(per_user_sinr, dtype=float),
        gamma_sat=None if gamma_sat is None else np.asarray(gamma_sat, dtype=float))
