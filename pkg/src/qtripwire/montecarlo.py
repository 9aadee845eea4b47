"""Stochastic interrogation campaigns: per-photon trials, noise and feedback.

Each trial sends one photon through the N-pass interferometer and samples
absorption pass by pass, so environmental noise and the feedback loop can
act mid-protocol.  A campaign runs M trials, optionally re-tuning the
controlled loss and the compensation phase every adjustment block, and
ends with a maximum-likelihood decision from the transmitted count.

Reproducibility contract: photon-level sampling draws from the
caller-supplied generator with a fixed per-trial consumption (2N uniforms),
while the environmental phase realization comes from a separate stream
seeded by ``NoiseModel.drift_seed``.  Two campaigns with identical seeds
therefore see identical environments and identical photon randomness,
which makes feedback-on/off comparisons paired experiments.  Use
``campaign_rng(seed, index)`` to split independent per-campaign streams.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .evolution import Hypothesis, PassConfig, transmission_probability
from .optimizer import optimize_loss
from .stats import OutcomeDistribution, decide

#: Trials per feedback adjustment block.
ADJUST_BLOCK = 100
#: Exponential-moving-average weight of the feedback estimators.
EMA_WEIGHT = 0.1
#: Initial environmental phase offset, in units of phase_sigma.
DRIFT_OFFSET_SCALE = 10.0
#: Per-trial random-walk step of the offset, in units of phase_sigma.
DRIFT_STEP_SCALE = 0.01


class TrialOutcome(Enum):
    TRANSMITTED = "transmitted"
    LOST = "lost"
    STRUCK = "struck"


@dataclass(frozen=True)
class NoiseModel:
    """Parametric environmental noise in the detection arm.

    ``extra_loss`` adds to the controlled per-pass loss.  The environmental
    phase on V is a slowly drifting offset (initial value ~ N(0, (10*sigma)^2),
    random-walk step 0.01*sigma per trial) plus independent per-pass jitter
    ~ N(0, sigma^2), with sigma = ``phase_sigma``; ``drift_seed`` seeds that
    realization.  Persistent offsets are what the feedback loop can cancel,
    per-pass jitter is what it cannot.
    """

    extra_loss: float = 0.0
    phase_sigma: float = 0.0
    drift_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.extra_loss <= 1.0:
            raise ValueError(f"extra_loss must be in [0, 1], got {self.extra_loss}")
        if self.phase_sigma < 0.0:
            raise ValueError(f"phase_sigma must be >= 0, got {self.phase_sigma}")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    outcome: TrialOutcome
    hypothesis_truth: Hypothesis


@dataclass(frozen=True)
class CampaignResult:
    """Summary of one M-trial interrogation campaign."""

    m_trials: int
    truth: Hypothesis
    transmitted_frequency: float
    decision: Hypothesis
    decision_error: bool
    strikes: int
    stayed_invisible: bool

    def __post_init__(self) -> None:
        if self.strikes >= 1 and self.stayed_invisible:
            raise ValueError("a single strike makes the tripwire visible")

    def to_record(self) -> dict:
        return {
            "m_trials": self.m_trials,
            "truth": self.truth.name,
            "transmitted_frequency": self.transmitted_frequency,
            "decision": self.decision.name,
            "decision_error": self.decision_error,
            "strikes": self.strikes,
            "stayed_invisible": self.stayed_invisible,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


class PhaseDrift:
    """Realization of the environmental phase process for one campaign."""

    def __init__(self, noise: NoiseModel, rng: np.random.Generator):
        self._sigma = noise.phase_sigma
        self._rng = rng
        self._step = DRIFT_STEP_SCALE * noise.phase_sigma
        self.offset = (
            float(rng.normal(0.0, DRIFT_OFFSET_SCALE * noise.phase_sigma))
            if noise.phase_sigma > 0.0
            else 0.0
        )

    def trial_phases(self, n_passes: int) -> np.ndarray:
        """Advance the drift one trial and return the per-pass phases."""
        if self._sigma == 0.0:
            return np.zeros(n_passes)
        self.offset += float(self._rng.normal(0.0, self._step))
        return self.offset + self._rng.normal(0.0, self._sigma, n_passes)


def campaign_rng(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible photon-sampling stream for campaign ``index``."""
    return np.random.default_rng(np.random.SeedSequence([abs(int(seed)), int(index)]))


def run_trial(
    cfg: PassConfig,
    truth: Hypothesis,
    noise: NoiseModel,
    rng: np.random.Generator,
    phases: np.ndarray | None = None,
    trial_index: int = 0,
) -> TrialRecord:
    """Send one photon through and sample its fate pass by pass.

    At each pass the photon is rotated, picks up the environmental phase
    plus cfg.phase_v on V, and may be absorbed first by the combined
    controlled + environmental loss and then by the object.  The state is
    renormalized after each surviving step, so the marginal outcome
    probabilities reproduce the closed-form transmission and strike
    probabilities exactly.

    Exactly 2 * n_passes uniforms are drawn from ``rng`` per call, whatever
    the outcome, so parallel runs with equal seeds stay aligned.  ``phases``
    overrides the per-pass environmental phases (campaigns pass them in
    from their drift realization); standalone calls draw zero-mean jitter
    from ``rng`` after the uniforms.
    """
    lam = cfg.loss + noise.extra_loss
    if lam > 1.0 + 1e-12:
        raise ValueError(f"combined loss {lam} exceeds 1; lower extra_loss or cfg.loss")
    lam = min(lam, 1.0)
    n = cfg.n_passes
    uniforms = rng.random((n, 2))
    if phases is None:
        phases = (
            rng.normal(0.0, noise.phase_sigma, n) if noise.phase_sigma > 0.0 else np.zeros(n)
        )

    c, s = math.cos(cfg.theta_per_pass), math.sin(cfg.theta_per_pass)
    damp = math.sqrt(1.0 - lam)
    blocked = truth is Hypothesis.OBJECT_PRESENT
    h, v = 1.0 + 0.0j, 0.0j
    for k in range(n):
        h, v = c * h - s * v, s * h + c * v
        phi = float(phases[k]) + cfg.phase_v
        if phi != 0.0:
            v *= cmath.exp(1j * phi)
        weight_v = abs(v) ** 2
        if uniforms[k, 0] < lam * weight_v:
            return TrialRecord(trial_index, TrialOutcome.LOST, truth)
        v *= damp
        norm = math.sqrt(abs(h) ** 2 + abs(v) ** 2)
        h, v = h / norm, v / norm
        if blocked:
            if uniforms[k, 1] < abs(v) ** 2:
                return TrialRecord(trial_index, TrialOutcome.STRUCK, truth)
            v = 0.0j
            h = h / abs(h)
    return TrialRecord(trial_index, TrialOutcome.TRANSMITTED, truth)


def run_campaign(
    cfg: PassConfig,
    truth: Hypothesis,
    noise: NoiseModel,
    m: int,
    feedback: bool,
    rng: np.random.Generator,
    q_reference: float | None = None,
    use_running_q: bool = False,
    adjust_block: int = ADJUST_BLOCK,
) -> CampaignResult:
    """Run M interrogation trials and decide which hypothesis they support.

    With ``feedback`` on, every ``adjust_block`` trials the controller
    re-centers the compensation phase to cancel the mean environmental
    phase seen over the block (EMA-smoothed, weight 0.1) and re-runs the
    loss optimization so the combined controlled + environmental loss sits
    back at the partial-Zeno minimum.  The environmental loss is assumed
    calibrated (known to the controller); the phase estimate comes from
    the realized block mean, an idealized monitor of the residual phase.

    The decision compares the transmitted count against the two-outcome
    model (p, q): p is the analytic with-object transmission and q defaults
    to the noise-free no-object transmission at ``cfg`` (override with
    ``q_reference``).  ``use_running_q`` substitutes this campaign's own
    empirical rate for q, which is only meaningful as a no-object
    self-consistency check: with an object present it estimates p, not q.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    base_cfg = PassConfig(cfg.n_passes, cfg.theta_per_pass, cfg.loss)
    p_ref = transmission_probability(base_cfg, Hypothesis.OBJECT_PRESENT)
    q_ref = (
        q_reference
        if q_reference is not None
        else transmission_probability(base_cfg, Hypothesis.OBJECT_ABSENT)
    )

    drift = PhaseDrift(noise, np.random.default_rng(abs(int(noise.drift_seed))))
    lam_ctrl = cfg.loss
    compensation = cfg.phase_v
    phase_estimate = 0.0
    have_estimate = False
    block_phase_sum = 0.0
    block_count = 0

    transmitted = 0
    strikes = 0
    for t in range(m):
        if feedback and t > 0 and t % adjust_block == 0 and block_count > 0:
            observed = block_phase_sum / block_count - compensation
            if have_estimate:
                phase_estimate = (1.0 - EMA_WEIGHT) * phase_estimate + EMA_WEIGHT * observed
            else:
                phase_estimate = observed
                have_estimate = True
            compensation = -phase_estimate
            lam_ctrl = min(
                max(optimize_loss(cfg.n_passes, cfg.theta_per_pass).lambda_opt
                    - noise.extra_loss, 0.0),
                1.0,
            )
            block_phase_sum = 0.0
            block_count = 0

        phases = drift.trial_phases(cfg.n_passes)
        block_phase_sum += float(np.mean(phases)) + compensation
        block_count += 1
        trial_cfg = PassConfig(cfg.n_passes, cfg.theta_per_pass, lam_ctrl, compensation)
        record = run_trial(trial_cfg, truth, noise, rng, phases=phases, trial_index=t)
        if record.outcome is TrialOutcome.TRANSMITTED:
            transmitted += 1
        elif record.outcome is TrialOutcome.STRUCK:
            strikes += 1

    q_used = q_ref
    if use_running_q:
        # Guard the degenerate empirical rates 0 and 1.
        q_used = min(max(transmitted / m, 0.5 / m), 1.0 - 0.5 / m)
    p0 = OutcomeDistribution({"transmitted": q_used, "blocked": 1.0 - q_used})
    p1 = OutcomeDistribution({"transmitted": p_ref, "blocked": 1.0 - p_ref})
    decision = decide({"transmitted": transmitted, "blocked": m - transmitted}, p0, p1, rng)

    return CampaignResult(
        m_trials=m,
        truth=truth,
        transmitted_frequency=transmitted / m,
        decision=decision,
        decision_error=decision is not truth,
        strikes=strikes,
        stayed_invisible=strikes == 0,
    )


def run_campaign_batch(
    cfg: PassConfig,
    truth: Hypothesis,
    noise: NoiseModel,
    m: int,
    n_campaigns: int,
    feedback: bool,
    seed: int,
    q_reference: float | None = None,
) -> list[CampaignResult]:
    """Independent campaigns with split photon streams and per-index drift seeds."""
    results = []
    for index in range(n_campaigns):
        campaign_noise = NoiseModel(
            extra_loss=noise.extra_loss,
            phase_sigma=noise.phase_sigma,
            drift_seed=noise.drift_seed + index,
        )
        results.append(
            run_campaign(
                cfg,
                truth,
                campaign_noise,
                m,
                feedback,
                campaign_rng(seed, index),
                q_reference=q_reference,
            )
        )
    return results


def empirical_visibility(results: Sequence[CampaignResult]) -> float:
    """Fraction of object-present campaigns in which no photon ever struck."""
    if not results:
        raise ValueError("need at least one campaign result")
    m = results[0].m_trials
    for result in results:
        if result.truth is not Hypothesis.OBJECT_PRESENT:
            raise ValueError("visibility is defined for object-present campaigns")
        if result.m_trials != m:
            raise ValueError("campaigns must share the same trial count")
    return sum(result.stayed_invisible for result in results) / len(results)
