"""Closed-form outcome statistics of a lossless single-pass Mach-Zehnder IFM.

The baseline interferometric detection scheme: two beam splitters with
rotation angles theta1, theta2 and a possible absorbing object in the
detection arm between them.  In the dark-port arrangement
theta1 + theta2 = pi/2 a photon in the dark port certifies the object
without interaction.  The N-pass tripwire improves on the efficiency
bound of this setup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .evolution import Hypothesis
from .stats import OutcomeDistribution

DARK_PORT_TOL = 1e-9

#: Outcome labels: A absorbed by the object, B bright port, D dark port.
OUTCOMES = ("A", "B", "D")


@dataclass(frozen=True)
class SimpleMziConfig:
    """Beam splitter angles of the single-pass interferometer."""

    theta1: float
    theta2: float

    def __post_init__(self) -> None:
        for name, theta in (("theta1", self.theta1), ("theta2", self.theta2)):
            if not 0.0 <= theta <= math.pi / 2:
                raise ValueError(f"{name} must be in [0, pi/2], got {theta}")

    @property
    def is_dark_port(self) -> bool:
        """True when theta1 + theta2 = pi/2, so no object means no dark-port clicks."""
        return abs(self.theta1 + self.theta2 - math.pi / 2) <= DARK_PORT_TOL


def outcome_distribution(cfg: SimpleMziConfig, hypothesis: Hypothesis) -> OutcomeDistribution:
    """Probabilities of absorption (A), bright port (B) and dark port (D).

    With the object in the arm the interference is destroyed:
    P(A) = sin^2(theta1), P(D) = cos^2(theta1) cos^2(theta2), B the rest.
    Without it the photon self-interferes with zero phase difference and
    the general formulas hold whether or not the dark-port condition is
    met (check ``cfg.is_dark_port`` to detect a violated arrangement).
    """
    if hypothesis is Hypothesis.OBJECT_PRESENT:
        p_absorbed = math.sin(cfg.theta1) ** 2
        p_dark = (math.cos(cfg.theta1) * math.cos(cfg.theta2)) ** 2
        p_bright = (math.cos(cfg.theta1) * math.sin(cfg.theta2)) ** 2
    else:
        total = cfg.theta1 + cfg.theta2
        p_absorbed = 0.0
        if cfg.is_dark_port:
            # The arrangement means exact cancellation; cos(pi/2) evaluating
            # to ~6e-17 would otherwise leave the dark port in the support,
            # which distance measures treat very differently from zero.
            p_dark = 0.0
            p_bright = 1.0
        else:
            p_dark = math.cos(total) ** 2
            p_bright = math.sin(total) ** 2
    return OutcomeDistribution({"A": p_absorbed, "B": p_bright, "D": p_dark})


def ifm_efficiency(cfg: SimpleMziConfig) -> float:
    """Fraction of object detections that happen without interaction.

    P(D) / [P(D) + P(A)] under the object-present statistics; in the
    dark-port arrangement this equals cos^2(theta1) / (1 + cos^2(theta1))
    and never exceeds 1/2.
    """
    dist = outcome_distribution(cfg, Hypothesis.OBJECT_PRESENT)
    detected = dist["D"] + dist["A"]
    # cos(pi/2)**2 rounds to ~4e-33 rather than 0, hence a threshold.
    if detected < 1e-30:
        raise ValueError("object is never detected at these angles (theta1=0, theta2=pi/2)")
    return dist["D"] / detected
