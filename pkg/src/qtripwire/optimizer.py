"""Partial-Zeno operating points: loss values that minimize no-object transmission.

For a fixed number of passes N and per-pass rotation theta the no-object
transmission q(lambda) equals 1 at lambda = 0 (unitary evolution) and
cos(theta)^(2N) at lambda = 1 (full projection, identical to an object),
with a single interior minimum in between for N >= 2.  Operating the
tripwire at that minimum maximizes the contrast between the quiet channel
and the object-induced Zeno transmission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .evolution import PassConfig, strike_probability
from .stats import TwoOutcomeModel, chernoff_distance_two_outcome, visibility_distance

GOLDEN_RATIO = (math.sqrt(5.0) + 1.0) / 2.0
COARSE_GRID_SIZE = 1001
LAMBDA_TOL = 1e-9
BOUNDARY_TOL = 1e-6


@dataclass(frozen=True)
class OperatingPoint:
    """Loss-optimized configuration for a given pass count and total rotation."""

    n_passes: int
    theta_total: float
    lambda_opt: float
    q_min: float
    p: float
    at_boundary: bool = False

    @property
    def theta_per_pass(self) -> float:
        return self.theta_total / self.n_passes

    @property
    def pass_config(self) -> PassConfig:
        return PassConfig(self.n_passes, self.theta_per_pass, self.lambda_opt)


@dataclass(frozen=True)
class DistanceReport:
    """Chernoff and visibility distances (nats) at one operating point."""

    point: OperatingPoint
    c2: float
    c_vis: float
    ratio: float


def no_object_transmission(n: int, theta: float, lams: Sequence[float]) -> np.ndarray:
    """Vectorized q(lambda) for the given pass count and per-pass rotation.

    Zero-phase evolution keeps the amplitudes real, so each pass is a real
    2x2 map applied elementwise across the lambda grid.
    """
    lams = np.asarray(lams, dtype=float)
    if np.any(lams < 0.0) or np.any(lams > 1.0):
        raise ValueError("loss grid values must lie in [0, 1]")
    c, s = math.cos(theta), math.sin(theta)
    damp = np.sqrt(1.0 - lams)
    h = np.ones_like(lams)
    v = np.zeros_like(lams)
    for _ in range(n):
        h, v = c * h - s * v, damp * (s * h + c * v)
    return h * h + v * v


@lru_cache(maxsize=512)
def optimize_loss(n: int, theta_per_pass: float) -> OperatingPoint:
    """Find the controlled loss minimizing no-object transmission.

    Coarse scan over a 1001-point lambda grid, then golden-section
    refinement of the bracketing interval down to 1e-9 in lambda.  A
    minimizer pinned to lambda = 0 or 1 (e.g. the single-pass case, where
    q is monotone in lambda) is flagged with ``at_boundary``.  Pure and
    cached: the feedback loop re-evaluates it every adjustment block.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 < theta_per_pass <= math.pi / 2:
        raise ValueError(f"theta_per_pass must be in (0, pi/2], got {theta_per_pass}")

    grid = np.linspace(0.0, 1.0, COARSE_GRID_SIZE)
    values = no_object_transmission(n, theta_per_pass, grid)
    best = int(np.argmin(values))

    def objective(lam: float) -> float:
        return float(no_object_transmission(n, theta_per_pass, [lam])[0])

    lo = float(grid[max(best - 1, 0)])
    hi = float(grid[min(best + 1, COARSE_GRID_SIZE - 1)])
    lam_best, q_best = float(grid[best]), float(values[best])
    c = hi - (hi - lo) / GOLDEN_RATIO
    d = lo + (hi - lo) / GOLDEN_RATIO
    fc, fd = objective(c), objective(d)
    while hi - lo > LAMBDA_TOL:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) / GOLDEN_RATIO
            fc = objective(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) / GOLDEN_RATIO
            fd = objective(d)
        for lam, q in ((c, fc), (d, fd)):
            if q < q_best:
                lam_best, q_best = lam, q

    p = math.cos(theta_per_pass) ** (2 * n)
    return OperatingPoint(
        n_passes=n,
        theta_total=n * theta_per_pass,
        lambda_opt=lam_best,
        q_min=q_best,
        p=p,
        at_boundary=lam_best < BOUNDARY_TOL or lam_best > 1.0 - BOUNDARY_TOL,
    )


def distance_report(point: OperatingPoint) -> DistanceReport:
    """Chernoff distance C2(p, q_min), visibility distance and their ratio."""
    c2 = chernoff_distance_two_outcome(TwoOutcomeModel(p=point.p, q=point.q_min))
    c_vis = visibility_distance(strike_probability(point.pass_config))
    return DistanceReport(point=point, c2=c2, c_vis=c_vis, ratio=c2 / c_vis)


def transmission_curve(
    n: int, theta_total: float, lambda_grid: Sequence[float]
) -> list[tuple[float, float]]:
    """No-object transmission along a loss grid, with theta_per_pass = theta_total / n."""
    values = no_object_transmission(n, theta_total / n, lambda_grid)
    return [(float(lam), float(q)) for lam, q in zip(lambda_grid, values)]


def sweep(n_values: Sequence[int], theta_total: float) -> list[DistanceReport]:
    """Distance reports for each pass count at fixed total rotation, ordered by N."""
    if not n_values:
        raise ValueError("n_values must be nonempty")
    reports = []
    for n in sorted(n_values):
        point = optimize_loss(n, theta_total / n)
        if point.at_boundary and math.isclose(point.p, point.q_min, abs_tol=1e-9):
            # Degenerate point (object statistics indistinguishable): no
            # finite Chernoff report, but the row is still worth emitting.
            c_vis = visibility_distance(strike_probability(point.pass_config))
            reports.append(DistanceReport(point=point, c2=math.nan, c_vis=c_vis, ratio=math.nan))
        else:
            reports.append(distance_report(point))
    return reports


def find_crossover(reports: Sequence[DistanceReport]) -> int | None:
    """Smallest pass count whose Chernoff distance exceeds the visibility distance."""
    for report in sorted(reports, key=lambda r: r.point.n_passes):
        if report.ratio > 1.0:
            return report.point.n_passes
    return None
