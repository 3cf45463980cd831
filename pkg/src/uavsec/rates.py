"""Achievable rates, per-point secrecy rate, and the flight-level sum rate.

All rates are in bits/s/Hz (log base 2); all powers are linear mW.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .beamforming import BeamformingPair
from .geometry import LinkState

import numpy as np


@dataclass(frozen=True)
class RateBreakdown:
    rate_bob: float
    rate_eve: float
    secrecy_rate: float
    signal_power_bob: float
    an_power_bob: float
    signal_power_eve: float
    an_power_eve: float


def _check_beta(beta: float):
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")


def rate_bob(link: LinkState, bf: BeamformingPair, beta: float) -> float:
    """Rate of the legitimate UAV link for a given power split."""
    _check_beta(beta)
    signal = link.g_ab * beta * link.p_s * abs(np.vdot(link.h_b, bf.v_b)) ** 2
    interference = link.g_ab * (1.0 - beta) * link.p_s * abs(np.vdot(link.h_b, bf.v_an)) ** 2
    return math.log2(1.0 + signal / (interference + link.sigma2_b))


def rate_eve(link: LinkState, bf: BeamformingPair, beta: float) -> float:
    """Rate of the eavesdropper link for the same transmit signal."""
    _check_beta(beta)
    signal = link.g_ae * beta * link.p_s * abs(np.vdot(link.h_e, bf.v_b)) ** 2
    interference = link.g_ae * (1.0 - beta) * link.p_s * abs(np.vdot(link.h_e, bf.v_an)) ** 2
    return math.log2(1.0 + signal / (interference + link.sigma2_e))


def secrecy_rate(link: LinkState, bf: BeamformingPair, beta: float) -> RateBreakdown:
    """Per-point secrecy rate max{0, R_b - R_e} with its power breakdown."""
    _check_beta(beta)
    sig_b = link.g_ab * beta * link.p_s * abs(np.vdot(link.h_b, bf.v_b)) ** 2
    an_b = link.g_ab * (1.0 - beta) * link.p_s * abs(np.vdot(link.h_b, bf.v_an)) ** 2
    sig_e = link.g_ae * beta * link.p_s * abs(np.vdot(link.h_e, bf.v_b)) ** 2
    an_e = link.g_ae * (1.0 - beta) * link.p_s * abs(np.vdot(link.h_e, bf.v_an)) ** 2
    r_b = math.log2(1.0 + sig_b / (an_b + link.sigma2_b))
    r_e = math.log2(1.0 + sig_e / (an_e + link.sigma2_e))
    return RateBreakdown(
        rate_bob=r_b,
        rate_eve=r_e,
        secrecy_rate=max(0.0, r_b - r_e),
        signal_power_bob=sig_b,
        an_power_bob=an_b,
        signal_power_eve=sig_e,
        an_power_eve=an_e,
    )


def secrecy_sum_rate(rate_differences: Iterable[float]) -> float:
    """Whole-flight sum rate max{0, sum_n (R_b,n - R_e,n)}.

    Takes the signed per-point differences; clamping happens on the sum, not
    per point. The per-point-clamped variant is just sum(max(0, .)) and is
    reported separately by the harness.
    """
    values = list(rate_differences)
    if not values:
        raise ValueError("secrecy_sum_rate needs at least one sampling point")
    return max(0.0, math.fsum(values))
