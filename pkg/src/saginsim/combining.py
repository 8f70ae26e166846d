"""Cooperative-diversity receiver mathematics for the dual-hop AF path.

The destination stacks L direct-path antennas on top of L relay-path
antennas; relay noise is colored by the AF gain, giving the block noise
covariance sigma2 * diag(I_L, I_L + G^2 h_r h_r^H).  The optimal combiner is
the whitened matched filter, and its SINR collapses to the closed form
gamma_d + gamma_1*gamma_2/(gamma_2 + varsigma).
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class CombinerInput:
    """Channel state for one user's combiner in one slot.

    h_direct and h_relay are the L-antenna satellite-user and relay-user
    channel vectors, hbar the scalar satellite-relay amplitude, af_gain the
    amplitude-domain AF gain G, sigma2 the per-branch noise power in watts.
    """

    h_direct: np.ndarray
    h_relay: np.ndarray
    hbar: float
    af_gain: float
    sigma2: float
    tx_power: float

    def __post_init__(self):
        self.h_direct = np.atleast_1d(np.asarray(self.h_direct, dtype=complex))
        self.h_relay = np.atleast_1d(np.asarray(self.h_relay, dtype=complex))
        if self.h_direct.shape != self.h_relay.shape or self.h_direct.ndim != 1:
            raise ValueError("h_direct and h_relay must be equal-length vectors")
        if self.sigma2 <= 0:
            raise ValueError("sigma2 must be positive")
        if self.af_gain < 0 or self.tx_power < 0:
            raise ValueError("af_gain and tx_power must be >= 0")

    @property
    def antennas(self) -> int:
        return self.h_direct.shape[0]


def stacked_channel(ci: CombinerInput) -> np.ndarray:
    """2L-vector [h_direct; G*hbar*h_relay] seen by the combiner."""
    return np.concatenate([ci.h_direct, ci.af_gain * ci.hbar * ci.h_relay])


def path_sinrs(ci: CombinerInput):
    """(gamma_direct, gamma_hop1, gamma_hop2, varsigma) of this input.

    gamma_hop2 carries no tx_power factor: the satellite power rides through
    the relay inside gamma_hop1, so the closed form stays consistent with the
    dense-matrix quadratic form.
    """
    gamma_d = ci.tx_power * float(np.sum(np.abs(ci.h_direct) ** 2)) / ci.sigma2
    gamma_1 = ci.tx_power * ci.hbar ** 2 / ci.sigma2
    gamma_2 = float(np.sum(np.abs(ci.h_relay) ** 2)) / ci.sigma2
    vs = 1.0 / (ci.sigma2 * ci.af_gain ** 2)
    return gamma_d, gamma_1, gamma_2, vs


def noise_covariance(ci: CombinerInput) -> np.ndarray:
    """sigma2 * blockdiag(I_L, I_L + G^2 h_relay h_relay^H), Hermitian PD."""
    ell = ci.antennas
    top = np.eye(ell, dtype=complex)
    bottom = np.eye(ell, dtype=complex) + ci.af_gain ** 2 * np.outer(
        ci.h_relay, ci.h_relay.conj())
    rn = np.zeros((2 * ell, 2 * ell), dtype=complex)
    rn[:ell, :ell] = top
    rn[ell:, ell:] = bottom
    return ci.sigma2 * rn


def combiner_sinr(ci: CombinerInput, w) -> float:
    """Rayleigh-quotient SINR P * |w^H h|^2 / (w^H R_n w); scale invariant."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    if w.shape != (2 * ci.antennas,):
        raise ValueError("weight vector must have length 2L")
    if not np.any(w):
        raise ValueError("weight vector must be nonzero")
    h = stacked_channel(ci)
    num = ci.tx_power * np.abs(np.vdot(w, h)) ** 2
    w_r = w[ci.antennas:]
    den = ci.sigma2 * (np.vdot(w, w).real
                       + ci.af_gain ** 2 * np.abs(np.vdot(w_r, ci.h_relay)) ** 2)
    return float(num / den)


def optimal_weight(ci: CombinerInput) -> np.ndarray:
    """Whitened matched filter R_n^-1 h, via Sherman-Morrison on the relay block."""
    g2 = ci.af_gain ** 2
    relay_norm_sq = float(np.sum(np.abs(ci.h_relay) ** 2))
    w_top = ci.h_direct / ci.sigma2
    w_bot = (ci.af_gain * ci.hbar / ci.sigma2) * ci.h_relay / (1.0 + g2 * relay_norm_sq)
    return np.concatenate([w_top, w_bot])


def max_sinr_closed_form(gamma_direct: float, gamma_relay_hop1: float,
                         gamma_relay_hop2: float, varsigma: float) -> float:
    """Dual-hop AF maximum SINR: gamma_d + gamma_1*gamma_2/(gamma_2 + varsigma)."""
    for name, v in (("gamma_direct", gamma_direct), ("gamma_relay_hop1", gamma_relay_hop1),
                    ("gamma_relay_hop2", gamma_relay_hop2), ("varsigma", varsigma)):
        if v < 0:
            raise ValueError(f"{name} must be >= 0")
    den = gamma_relay_hop2 + varsigma
    if den <= 0:
        raise ValueError("gamma_relay_hop2 + varsigma must be positive")
    return gamma_direct + gamma_relay_hop1 * gamma_relay_hop2 / den


def max_sinr(ci: CombinerInput) -> float:
    """Closed-form maximum SINR evaluated from a CombinerInput."""
    gamma_d, gamma_1, gamma_2, vs = path_sinrs(ci)
    return max_sinr_closed_form(gamma_d, gamma_1, gamma_2, vs)


def egc_sinr(ci: CombinerInput) -> float:
    """SINR of the equal-gain combiner: unit-modulus weights co-phased with h.

    Dead branches (zero channel) are excluded rather than given unit weight,
    so a single live branch reduces to the matched filter.
    """
    h = stacked_channel(ci)
    live = np.abs(h) > 0
    if not live.any():
        return 0.0
    w = np.where(live, np.exp(1j * np.angle(h)), 0.0)
    return combiner_sinr(ci, w)
