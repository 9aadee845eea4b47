"""Binary hypothesis testing statistics: Chernoff bounds and distance measures.

Distinguishing "object present" from "object absent" after repeated
interrogation trials is a symmetric binary hypothesis test.  This module
provides the single-trial Chernoff error bound, the Chernoff distance
(the exponential decay rate of the optimal error probability), a closed
form for two-outcome tests, the visibility distance (decay rate of the
probability of never striking the object), and a maximum-likelihood
decision rule.  All distances are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .evolution import Hypothesis

PROB_SUM_TOL = 1e-9
GOLDEN_RATIO = (math.sqrt(5.0) + 1.0) / 2.0


class InconsistentDataError(ValueError):
    """Observed counts are impossible under both hypotheses."""


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities over a finite set of outcome labels, summing to one."""

    probs: Mapping[str, float]

    def __post_init__(self) -> None:
        if not self.probs:
            raise ValueError("distribution needs at least one outcome")
        for label, p in self.probs.items():
            if not math.isfinite(p) or p < -1e-12 or p > 1.0 + 1e-12:
                raise ValueError(f"probability of {label!r} out of range: {p}")
        total = math.fsum(self.probs.values())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", dict(self.probs))

    def __getitem__(self, label: str) -> float:
        return self.probs[label]

    @property
    def outcomes(self) -> frozenset[str]:
        return frozenset(self.probs)


@dataclass(frozen=True)
class TwoOutcomeModel:
    """Transmission probabilities with (p) and without (q) an object."""

    p: float
    q: float

    def __post_init__(self) -> None:
        for name, value in (("p", self.p), ("q", self.q)):
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly inside (0, 1), got {value}")


@dataclass(frozen=True)
class TrialScaling:
    """Number of trials together with the per-trial distances in nats."""

    m_trials: int
    chernoff_distance: float
    visibility_distance: float

    def __post_init__(self) -> None:
        if self.m_trials < 0:
            raise ValueError(f"m_trials must be >= 0, got {self.m_trials}")
        if self.chernoff_distance < 0.0 or self.visibility_distance < 0.0:
            raise ValueError("distances must be nonnegative")


def _common_support_terms(
    p0: OutcomeDistribution, p1: OutcomeDistribution
) -> list[tuple[float, float]]:
    if p0.outcomes != p1.outcomes:
        raise ValueError(
            f"outcome sets differ: {sorted(p0.outcomes)} vs {sorted(p1.outcomes)}"
        )
    return [(p0[b], p1[b]) for b in p0.outcomes if p0[b] > 0.0 and p1[b] > 0.0]


def _chernoff_minimum(p0: OutcomeDistribution, p1: OutcomeDistribution) -> tuple[float, float]:
    """Minimize sum_b p0(b)^s p1(b)^(1-s) over s in [0, 1].

    Outcomes outside the common support contribute nothing for any s in the
    closed interval (taking the sum's continuous extension at the endpoints,
    which is what makes the bound reduce to the intuitive answer when one
    hypothesis has outcomes the other forbids).  The summand is log-convex
    in s, so one coarse bracket plus golden-section refinement suffices.
    """
    terms = _common_support_terms(p0, p1)
    if not terms:
        return 0.0, 0.0

    # Each term is exp(a + s*d) with a = ln p1, d = ln(p0/p1).
    coeffs = [(math.log(t1), math.log(t0) - math.log(t1)) for t0, t1 in terms]

    def objective(s: float) -> float:
        return math.fsum(math.exp(a + s * d) for a, d in coeffs)

    grid = [i / 100.0 for i in range(101)]
    values = [objective(s) for s in grid]
    best_idx = min(range(101), key=values.__getitem__)
    best_s, best_val = grid[best_idx], values[best_idx]

    lo = grid[max(best_idx - 1, 0)]
    hi = grid[min(best_idx + 1, 100)]
    c = hi - (hi - lo) / GOLDEN_RATIO
    d = lo + (hi - lo) / GOLDEN_RATIO
    fc, fd = objective(c), objective(d)
    while hi - lo > 1e-10:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) / GOLDEN_RATIO
            fc = objective(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) / GOLDEN_RATIO
            fd = objective(d)
        for s, v in ((c, fc), (d, fd)):
            if v < best_val:
                best_s, best_val = s, v
    return best_s, best_val


def chernoff_bound(p0: OutcomeDistribution, p1: OutcomeDistribution) -> float:
    """Single-trial error bound (1/2) min_s sum_b p0(b)^s p1(b)^(1-s)."""
    _, value = _chernoff_minimum(p0, p1)
    return 0.5 * value


def chernoff_distance(p0: OutcomeDistribution, p1: OutcomeDistribution) -> float:
    """Chernoff distance -ln min_s sum_b p0(b)^s p1(b)^(1-s), in nats."""
    _, value = _chernoff_minimum(p0, p1)
    if value == 0.0:
        return math.inf
    return -math.log(value)


def chernoff_distance_two_outcome(model: TwoOutcomeModel) -> float:
    """Closed-form Chernoff distance for a two-outcome test with rates p and q.

    C2(p, q) = xi ln(xi/p) + (1-xi) ln((1-xi)/(1-p)) with the tilted weight
    xi = ln((1-q)/(1-p)) / (ln(p/(1-p)) + ln((1-q)/q)).
    """
    p, q = model.p, model.q
    if p == q:
        raise ValueError("p == q gives a degenerate test with zero distance")
    xi = math.log((1.0 - q) / (1.0 - p)) / (
        math.log(p / (1.0 - p)) + math.log((1.0 - q) / q)
    )
    return xi * math.log(xi / p) + (1.0 - xi) * math.log((1.0 - xi) / (1.0 - p))


def visibility_distance(p_str: float) -> float:
    """Decay rate -ln(1 - p_str) of the probability of staying unstruck."""
    if not 0.0 <= p_str <= 1.0:
        raise ValueError(f"strike probability must be in [0, 1], got {p_str}")
    if p_str == 1.0:
        raise ValueError("strike probability 1 gives an infinite visibility distance")
    return -math.log1p(-p_str)


def invisibility_probability(scaling: TrialScaling) -> float:
    """Probability exp(-M * C_vis) that the tripwire stays invisible after M trials."""
    return math.exp(-scaling.m_trials * scaling.visibility_distance)


def max_error_bound(scaling: TrialScaling) -> float:
    """Bound (1/2) exp(-M * C2) on the probability of deciding wrongly after M trials."""
    return 0.5 * math.exp(-scaling.m_trials * scaling.chernoff_distance)


def decide(
    counts: Mapping[str, int],
    p0: OutcomeDistribution,
    p1: OutcomeDistribution,
    rng_tiebreak: np.random.Generator,
) -> Hypothesis:
    """Maximum-likelihood decision between the two hypotheses given i.i.d. counts.

    An outcome impossible under one hypothesis but observed forces the other;
    an exact likelihood tie is resolved by a fair coin from ``rng_tiebreak``.
    """
    if p0.outcomes != p1.outcomes:
        raise ValueError("distributions must share one outcome set")
    loglik = {Hypothesis.OBJECT_ABSENT: 0.0, Hypothesis.OBJECT_PRESENT: 0.0}
    for label, count in counts.items():
        if count < 0:
            raise ValueError(f"negative count for {label!r}")
        if count == 0:
            continue
        if label not in p0.outcomes:
            raise InconsistentDataError(f"outcome {label!r} unknown to both hypotheses")
        for hyp, dist in ((Hypothesis.OBJECT_ABSENT, p0), (Hypothesis.OBJECT_PRESENT, p1)):
            prob = dist[label]
            loglik[hyp] += count * math.log(prob) if prob > 0.0 else -math.inf
    l0 = loglik[Hypothesis.OBJECT_ABSENT]
    l1 = loglik[Hypothesis.OBJECT_PRESENT]
    if l0 == -math.inf and l1 == -math.inf:
        raise InconsistentDataError("observed counts are impossible under both hypotheses")
    if l0 == l1:
        return Hypothesis.OBJECT_ABSENT if rng_tiebreak.random() < 0.5 else Hypothesis.OBJECT_PRESENT
    return Hypothesis.OBJECT_ABSENT if l0 > l1 else Hypothesis.OBJECT_PRESENT
