"""World geometry: users, relays, ground station, satellite orbit, hotspots."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

MU_EARTH = 3.986004418e14  # standard gravitational parameter, m^3/s^2


def _pos2(obj):
    """Ground-plane coordinates of a User/UavRelay/array-like."""
    p = getattr(obj, "position", obj)
    return np.asarray(p, dtype=float)[:2]


@dataclass
class User:
    id: int
    position: np.ndarray  # (x, y) meters

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)


@dataclass
class UavRelay:
    id: int
    position: np.ndarray  # (x, y, altitude) meters
    coverage_radius: float
    hover_power: float

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        if self.position[2] <= 0:
            raise ValueError("relay altitude must be positive")
        if self.coverage_radius <= 0 or self.hover_power <= 0:
            raise ValueError("coverage radius and hover power must be positive")

    @property
    def altitude(self) -> float:
        return float(self.position[2])


@dataclass
class Satellite:
    altitude: float
    orbital_period: float
    polar_angle: float
    earth_radius: float
    min_elevation_slant_range: float
    tx_power: float

    def __post_init__(self):
        if self.orbital_period <= 0:
            raise ValueError("orbital period must be positive")
        if self.min_elevation_slant_range < self.altitude:
            raise ValueError("min-elevation slant range cannot be below the altitude")

    @property
    def earth_center_distance(self) -> float:
        return self.earth_radius + self.altitude

    @classmethod
    def build(cls, altitude, tx_power, earth_radius=6371e3, min_elevation_rad=np.radians(10.0),
              polar_angle=0.0, orbital_period=0.0):
        """Derive the slant-range bound from a minimum elevation angle and,
        when orbital_period is 0, the circular-orbit Kepler period."""
        d_sr = slant_range_at_min_elevation(earth_radius, altitude, min_elevation_rad)
        if orbital_period <= 0:
            r = earth_radius + altitude
            orbital_period = 2.0 * np.pi * np.sqrt(r ** 3 / MU_EARTH)
        return cls(altitude=altitude, orbital_period=orbital_period, polar_angle=polar_angle,
                   earth_radius=earth_radius, min_elevation_slant_range=d_sr, tx_power=tx_power)


@dataclass
class GroundStation:
    position: np.ndarray  # (x, y) meters
    area: tuple  # (width, height) meters
    max_users: int
    tx_power_per_user: float

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        if self.max_users < 0:
            raise ValueError("max_users must be >= 0")


class HotspotKind(Enum):
    DENSITY_BASED = "density"
    EXCESS_BASED = "excess"


@dataclass
class Hotspot:
    kind: HotspotKind
    sector_center: np.ndarray  # member centroid, meters
    member_users: list
    density_threshold: float

    def __post_init__(self):
        self.sector_center = np.asarray(self.sector_center, dtype=float)
        if len(self.member_users) == 0:
            raise ValueError("hotspot must have members")


@dataclass
class ScenarioState:
    users: list
    gbs: GroundStation
    satellite: Satellite
    uavrs: list = field(default_factory=list)
    slot_index: int = 0
    num_slots: int = 1
    slot_duration_s: float = 60.0
    rng_seed: int = 0
    gbs_user_ids: frozenset = frozenset()
    coverage_radius_m: float = None
    density_threshold_per_m2: float = 1e-3

    def __post_init__(self):
        if not (0 <= self.slot_index < self.num_slots):
            raise ValueError("slot_index out of range")

    @property
    def slot_time_s(self) -> float:
        return self.slot_index * self.slot_duration_s

    def user_positions(self) -> np.ndarray:
        return np.array([u.position for u in self.users], dtype=float).reshape(len(self.users), 2)


def generate_users(intensity, area, seed):
    """Poisson point process over the rectangle: Poisson count, uniform spots."""
    if intensity <= 0:
        raise ValueError("intensity must be positive")
    w, h = float(area[0]), float(area[1])
    if w <= 0 or h <= 0:
        raise ValueError("area must be non-degenerate")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    n = rng.poisson(intensity * w * h)
    xy = rng.uniform(0.0, 1.0, (n, 2)) * np.array([w, h])
    return [User(i, xy[i]) for i in range(n)]


def generate_fixed_users(count, area, seed, start_id=0):
    """Fixed user count, i.i.d. uniform positions over the rectangle."""
    if count < 0:
        raise ValueError("count must be >= 0")
    w, h = float(area[0]), float(area[1])
    if w <= 0 or h <= 0:
        raise ValueError("area must be non-degenerate")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    xy = rng.uniform(0.0, 1.0, (count, 2)) * np.array([w, h])
    return [User(start_id + i, xy[i]) for i in range(count)]


def generate_cluster_users(center, radius, count, area, rng, start_id=0):
    """Uniform draws over a disk, clipped to the rectangle."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    phi = rng.uniform(0.0, 2.0 * np.pi, count)
    xy = np.asarray(center, dtype=float) + np.column_stack([r * np.cos(phi), r * np.sin(phi)])
    xy[:, 0] = np.clip(xy[:, 0], 0.0, area[0])
    xy[:, 1] = np.clip(xy[:, 1], 0.0, area[1])
    return [User(start_id + i, xy[i]) for i in range(count)]


def horizontal_distance(u, v) -> float:
    """Ground-plane distance between two entities or coordinate pairs."""
    return float(np.linalg.norm(_pos2(u) - _pos2(v)))


def slant_distance(u, v) -> float:
    """3-D distance, taking the relay altitude from v."""
    r = horizontal_distance(u, v)
    h = v.altitude if hasattr(v, "altitude") else float(np.asarray(getattr(v, "position", v))[2])
    return float(np.hypot(r, h))


def elevation_angle(u, v) -> float:
    """Elevation from the user toward the relay, atan2(h, r) in (0, pi/2]."""
    r = horizontal_distance(u, v)
    h = v.altitude if hasattr(v, "altitude") else float(np.asarray(getattr(v, "position", v))[2])
    return float(np.arctan2(h, r))


def slant_range_at_min_elevation(earth_radius, altitude, elevation_rad) -> float:
    """Spherical slant range to a satellite seen at the given elevation."""
    s = earth_radius * np.sin(elevation_rad)
    return float(-s + np.sqrt(s ** 2 + altitude ** 2 + 2.0 * earth_radius * altitude))


def visibility_threshold(sat: Satellite) -> float:
    """Cosine bound on the orbital phase below which the satellite sets."""
    re, rc, d = sat.earth_radius, sat.earth_center_distance, sat.min_elevation_slant_range
    return (re ** 2 + rc ** 2 - d ** 2) / (2.0 * re * rc)


def satellite_visibility(sat: Satellite, t: float) -> int:
    """1 iff the slot-start orbital phase keeps the slant range within bound."""
    phase = 2.0 * np.pi * t / sat.orbital_period - sat.polar_angle
    return int(np.cos(phase) >= visibility_threshold(sat))


def satellite_slant_range(sat: Satellite, t: float) -> float:
    """Law-of-cosines distance from the area to the satellite at time t."""
    phase = 2.0 * np.pi * t / sat.orbital_period - sat.polar_angle
    re, rc = sat.earth_radius, sat.earth_center_distance
    d2 = re ** 2 + rc ** 2 - 2.0 * re * rc * np.cos(phase)
    return float(np.sqrt(max(d2, 0.0)))


def detect_hotspots(state: ScenarioState) -> list:
    """Grid-scan density hotspots plus the single over-capacity hotspot.

    The area is divided into square cells of side 2*R_j; a cell whose count of
    non-GBS-served users strictly exceeds density_threshold * pi * R_j^2 forms
    a DensityBased hotspot at its member centroid.  If the total user count
    exceeds the GBS capacity, the remaining unserved users (those not already
    in a density hotspot) form one ExcessBased hotspot.
    """
    if state.coverage_radius_m is None or state.coverage_radius_m <= 0:
        raise ValueError("coverage_radius_m must be set before hotspot detection")
    radius = state.coverage_radius_m
    d_th = state.density_threshold_per_m2
    served = set(state.gbs_user_ids)
    candidates = [u for u in state.users if u.id not in served]

    cell = 2.0 * radius
    w, h = state.gbs.area
    count_threshold = d_th * np.pi * radius ** 2

    bins = {}
    for u in candidates:
        ix = min(int(u.position[0] // cell), int(np.ceil(w / cell)) - 1)
        iy = min(int(u.position[1] // cell), int(np.ceil(h / cell)) - 1)
        bins.setdefault((ix, iy), []).append(u)

    hotspots = []
    density_members = set()
    for key in sorted(bins):
        members = bins[key]
        if len(members) > count_threshold:
            centroid = np.mean([u.position for u in members], axis=0)
            ids = sorted(u.id for u in members)
            hotspots.append(Hotspot(HotspotKind.DENSITY_BASED, centroid, ids, d_th))
            density_members.update(ids)

    if len(state.users) > state.gbs.max_users:
        excess = [u for u in candidates if u.id not in density_members]
        if excess:
            centroid = np.mean([u.position for u in excess], axis=0)
            ids = sorted(u.id for u in excess)
            hotspots.append(Hotspot(HotspotKind.EXCESS_BASED, centroid, ids, d_th))
    return hotspots
