"""Alternating loop between leakage beamforming and Max-SR power allocation.

One sampling point at a time: compute both beamformers for the current power
split, re-optimize the split in closed form, and repeat until the signed
secrecy rate stops moving. The beamforming step optimizes leakage ratios, not
the secrecy rate itself, so the iteration is not guaranteed monotone; the
stopping rule plus an iteration cap handle that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .beamforming import BeamformingPair, leakage_pair
from .geometry import LinkState
from .power_allocation import PaSolution, f_value, optimal_beta
from .rates import RateBreakdown, secrecy_rate


@dataclass(frozen=True)
class AisConfig:
    beta_init: float = 0.1
    epsilon: float = 1e-6
    max_iterations: int = 50

    def __post_init__(self):
        if not 0.0 < self.beta_init < 1.0:
            raise ValueError("beta_init must lie in (0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class AisIteration:
    """State after one beamform-then-reallocate cycle.

    ``beta`` is the freshly optimized split; ``f_value`` is the signed
    secrecy rate at that split with the vectors computed this cycle.
    """

    beta: float
    v_b: np.ndarray = field(repr=False)
    v_an: np.ndarray = field(repr=False)
    f_value: float = 0.0


@dataclass(frozen=True)
class AisTrace:
    iterations: tuple[AisIteration, ...]
    converged: bool
    iterations_used: int


def optimize_point(
    link: LinkState, cfg: AisConfig = AisConfig()
) -> tuple[BeamformingPair, PaSolution, AisTrace]:
    """Run the alternating iteration at one sampling point.

    Hitting the iteration cap is a soft failure: the last iterate is
    returned with ``converged=False`` so a flight sweep can keep going.
    """
    beta = cfg.beta_init
    records: list[AisIteration] = []
    converged = False
    for _ in range(cfg.max_iterations):
        bf = leakage_pair(link, beta)
        pa = optimal_beta(link, bf)
        # Convergence compares f at the incoming and re-optimized splits
        # under the same (current) vectors: once the power-allocation step
        # stops moving the secrecy rate, the loop is done.
        f_incoming = f_value(pa.coefficients, beta)
        beta = pa.beta_star
        records.append(
            AisIteration(beta=beta, v_b=bf.v_b, v_an=bf.v_an, f_value=pa.secrecy_rate_at_beta)
        )
        if abs(pa.secrecy_rate_at_beta - f_incoming) <= cfg.epsilon:
            converged = True
            break
    return bf, pa, AisTrace(
        iterations=tuple(records), converged=converged, iterations_used=len(records)
    )


def run_baseline(link: LinkState, fixed_beta: float) -> tuple[BeamformingPair, RateBreakdown]:
    """One-shot leakage beamformers and rates at a fixed power split."""
    if not 0.0 < fixed_beta < 1.0:
        raise ValueError("fixed_beta must lie in (0, 1)")
    bf = leakage_pair(link, fixed_beta)
    return bf, secrecy_rate(link, bf, fixed_beta)
