"""Single-photon polarization state evolution through an N-pass lossy interferometer.

A photon starts horizontally polarized.  Each pass rotates the polarization
by a fixed angle, applies a tunable amplitude loss (with optional phase) to
the vertical component, and, if an object blocks the vertical arm, projects
that component away entirely.  States are unnormalized two-component complex
amplitudes; the squared norm is the survival probability.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

# Rounding drift of repeated rotations reaches ~2e-12 by 10^4 passes, so the
# constructor guard sits well above that while still rejecting nonphysical input.
NORM_EPS = 1e-9


class Hypothesis(Enum):
    """Presence state of an object in the vertical (detection) arm."""

    OBJECT_ABSENT = 0
    OBJECT_PRESENT = 1


@dataclass(frozen=True)
class PhotonState:
    """Two complex polarization amplitudes (H, V); squared norm <= 1 under loss."""

    amp_h: complex
    amp_v: complex

    def __post_init__(self) -> None:
        for amp in (self.amp_h, self.amp_v):
            c = complex(amp)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite amplitude: {amp!r}")
        if self.norm_sq > 1.0 + NORM_EPS:
            raise ValueError(f"squared norm {self.norm_sq} exceeds 1")

    @property
    def norm_sq(self) -> float:
        return abs(self.amp_h) ** 2 + abs(self.amp_v) ** 2


#: Initial state |H>.
INITIAL_STATE = PhotonState(1.0, 0.0)


@dataclass(frozen=True)
class PassConfig:
    """Operating point of the tripwire: passes, per-pass rotation, loss, V phase."""

    n_passes: int
    theta_per_pass: float
    loss: float
    phase_v: float = 0.0

    def __post_init__(self) -> None:
        if self.n_passes < 1:
            raise ValueError(f"n_passes must be >= 1, got {self.n_passes}")
        if not math.isfinite(self.theta_per_pass) or not 0.0 < self.theta_per_pass <= math.pi / 2:
            raise ValueError(f"theta_per_pass must be in (0, pi/2], got {self.theta_per_pass}")
        if not 0.0 <= self.loss <= 1.0:
            raise ValueError(f"loss must be in [0, 1], got {self.loss}")
        if not math.isfinite(self.phase_v):
            raise ValueError(f"phase_v must be finite, got {self.phase_v}")


def rotate(state: PhotonState, theta: float) -> PhotonState:
    """Rotate the polarization plane by ``theta`` radians (norm preserving)."""
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta}")
    c, s = math.cos(theta), math.sin(theta)
    return PhotonState(c * state.amp_h - s * state.amp_v,
                       s * state.amp_h + c * state.amp_v)


def apply_loss(state: PhotonState, lam: float, phase_v: float = 0.0) -> PhotonState:
    """Damp the V amplitude by sqrt(1-lam) and advance its phase by ``phase_v``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"loss probability must be in [0, 1], got {lam}")
    if not math.isfinite(phase_v):
        raise ValueError(f"phase_v must be finite, got {phase_v}")
    factor = math.sqrt(1.0 - lam)
    if phase_v != 0.0:
        factor *= cmath.exp(1j * phase_v)
    return PhotonState(state.amp_h, state.amp_v * factor)


def single_pass(state: PhotonState, cfg: PassConfig, hypothesis: Hypothesis) -> PhotonState:
    """One pass: rotation, then controlled loss, then the object projector (if present)."""
    out = rotate(state, cfg.theta_per_pass)
    out = apply_loss(out, cfg.loss, cfg.phase_v)
    if hypothesis is Hypothesis.OBJECT_PRESENT:
        out = apply_loss(out, 1.0)
    return out


def evolve(cfg: PassConfig, hypothesis: Hypothesis) -> PhotonState:
    """Final (unnormalized) state after n_passes passes starting from |H>."""
    state = INITIAL_STATE
    for _ in range(cfg.n_passes):
        state = single_pass(state, cfg, hypothesis)
    return state


def transmission_probability(cfg: PassConfig, hypothesis: Hypothesis) -> float:
    """Probability that the photon survives all passes (squared final norm)."""
    return min(evolve(cfg, hypothesis).norm_sq, 1.0)


def polarization_probability(cfg: PassConfig, hypothesis: Hypothesis, basis: str) -> float:
    """Probability of detecting the photon with polarization ``basis`` ("H" or "V")."""
    state = evolve(cfg, hypothesis)
    if basis == "H":
        return abs(state.amp_h) ** 2
    if basis == "V":
        return abs(state.amp_v) ** 2
    raise ValueError(f"basis must be 'H' or 'V', got {basis!r}")


def strike_probability(cfg: PassConfig) -> float:
    """Probability that a photon hits the object in the V arm during one trial.

    Closed form (1 - loss) * (1 - cos(theta)^(2N)): at every pass the rotated-in
    V amplitude must escape the controlled loss before it can reach the object.
    Independent of phase_v, since the object erases the V amplitude each pass.
    """
    zeno_transmission = math.cos(cfg.theta_per_pass) ** (2 * cfg.n_passes)
    return (1.0 - cfg.loss) * (1.0 - zeno_transmission)
