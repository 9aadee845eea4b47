"""Invisible quantum tripwire simulator.

Library for simulating an N-pass interaction-free interrogation scheme:
single-photon polarization evolution under controlled loss, partial-Zeno
operating-point optimization, Chernoff-style hypothesis-testing distances,
and Monte Carlo interrogation campaigns with environmental noise and
feedback.
"""

from .evolution import (
    Hypothesis,
    PassConfig,
    PhotonState,
    apply_loss,
    evolve,
    polarization_probability,
    rotate,
    single_pass,
    strike_probability,
    transmission_probability,
)
from .montecarlo import (
    CampaignResult,
    NoiseModel,
    TrialOutcome,
    TrialRecord,
    campaign_rng,
    empirical_visibility,
    run_campaign,
    run_campaign_batch,
    run_trial,
)
from .optimizer import (
    DistanceReport,
    OperatingPoint,
    distance_report,
    find_crossover,
    no_object_transmission,
    optimize_loss,
    sweep,
    transmission_curve,
)
from .simple_mzi import SimpleMziConfig, ifm_efficiency, outcome_distribution
from .stats import (
    InconsistentDataError,
    OutcomeDistribution,
    TrialScaling,
    TwoOutcomeModel,
    chernoff_bound,
    chernoff_distance,
    chernoff_distance_two_outcome,
    decide,
    invisibility_probability,
    max_error_bound,
    visibility_distance,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignResult",
    "DistanceReport",
    "Hypothesis",
    "InconsistentDataError",
    "NoiseModel",
    "OperatingPoint",
    "OutcomeDistribution",
    "PassConfig",
    "PhotonState",
    "SimpleMziConfig",
    "TrialOutcome",
    "TrialRecord",
    "TrialScaling",
    "TwoOutcomeModel",
    "__version__",
    "apply_loss",
    "campaign_rng",
    "chernoff_bound",
    "chernoff_distance",
    "chernoff_distance_two_outcome",
    "decide",
    "distance_report",
    "empirical_visibility",
    "evolve",
    "find_crossover",
    "ifm_efficiency",
    "invisibility_probability",
    "max_error_bound",
    "no_object_transmission",
    "optimize_loss",
    "outcome_distribution",
    "polarization_probability",
    "rotate",
    "run_campaign",
    "run_campaign_batch",
    "run_trial",
    "single_pass",
    "strike_probability",
    "sweep",
    "transmission_curve",
    "transmission_probability",
    "visibility_distance",
]
