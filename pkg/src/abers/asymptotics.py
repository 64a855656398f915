"""Large-time self-similar behavior: profile, scaled distances, rescaling.

The large-time attractor of the solver is the source-type solution u_M of
the viscous Burgers equation u_t = (u^2/2)_x + nu u_xx started from a point
mass M at the origin, with nu the effective viscosity 1/gamma + c_nu m2/2
(m2: second moment of the relaxation kernel). This module evaluates u_M in
closed form, measures the scaled distances t^{(1/2)(1-1/p)} ||u(t) - u_M(t)||_p
along a trajectory, checks the decay envelope of ||u(t)||_p, and applies the
parabolic rescaling that relates large times to finite ones.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc, erfcx

from abers.core import Field, GridSpec, PhysicalParams, discrete_lp_norm, kernel_moments
from abers.report import StudyReport
from abers.splitting import Trajectory

__all__ = [
    "ProfileSpec",
    "decay_envelope_check",
    "decay_metric_series",
    "effective_viscosity",
    "rescale_field",
    "self_similar_profile",
]

log = logging.getLogger(__name__)


def effective_viscosity(params: PhysicalParams) -> float:
    """Viscosity of the large-time limit equation: 1/gamma + c_nu * m2 / 2."""
    _, _, m2 = kernel_moments(params.kernel)
    return 1.0 / params.gamma + params.c_nu * m2 / 2.0


@dataclass(frozen=True)
class ProfileSpec:
    """Mass and viscosity identifying one source-type profile u_M."""

    mass: float
    nu: float

    def __post_init__(self) -> None:
        if not self.nu > 0:
            raise ValueError(f"viscosity must be positive, got {self.nu}")
        if not math.isfinite(self.mass):
            raise ValueError(f"mass must be finite, got {self.mass}")

    @classmethod
    def from_params(cls, params: PhysicalParams, mass: float) -> "ProfileSpec":
        """Profile matching a solver configuration (effective viscosity)."""
        return cls(mass, effective_viscosity(params))

    @classmethod
    def normalized(cls, mass: float) -> "ProfileSpec":
        """Unit-coefficients normalization: viscosity 1 + m2/2 = 2."""
        return cls(mass, 2.0)


def _profile_values(mass: float, nu: float, t: float, x: np.ndarray) -> np.ndarray:
    # Closed form for u_t = (u^2/2)_x + nu u_xx from M*delta_0, written with
    # scaled complementary error functions so numerator and denominator stay
    # in range even when the plain erfc factors under/overflow.
    if mass < 0:
        return -_profile_values(-mass, nu, t, -x)
    root = 2.0 * math.sqrt(nu * t)
    xi = x / root
    big_r = mass / (2.0 * nu)
    # both branches of the where are evaluated everywhere; the discarded one
    # may overflow to inf and produce inf * 0, so silence both signals
    with np.errstate(over="ignore", invalid="ignore"):
        tail = np.where(
            xi <= 0,
            np.exp(xi * xi - big_r) * erfc(xi),
            math.exp(-big_r) * erfcx(xi),
        )
        den = erfcx(-xi) + tail
    num = -math.expm1(-big_r) * (2.0 / math.sqrt(math.pi)) * math.sqrt(nu / t)
    return num / den


def self_similar_profile(spec: ProfileSpec, t: float, grid: GridSpec) -> Field:
    """Source-type profile u_M(t, .) sampled at the grid's cell centers.

    The profile has mass M, constant sign equal to the sign of M, and obeys
    the exact two-parameter self-similarity u_M(t, x) = t^{-1/2} f(x/sqrt(t)).
    Sampling reuses the simulation grid so difference norms need no
    interpolation.

    Raises:
        ValueError: if t <= 0 (the point-mass initial datum itself is not a
            grid function).
    """
    if t <= 0:
        raise ValueError(f"profile time must be positive, got {t}")
    return Field(grid, _profile_values(spec.mass, spec.nu, t, grid.cell_centers))


def decay_metric_series(traj: Trajectory, spec: ProfileSpec, p: float) -> StudyReport:
    """Scaled distances t^{(1/2)(1-1/p)} ||u(t) - u_M(t)||_p along a run.

    Snapshots at t = 0 are skipped (with a notice in the metadata): the
    profile is singular there. The series decaying toward zero is the
    statement that u_M is the first asymptotic term of the solver's output.
    """
    if p != math.inf and p < 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    exponent = 0.5 * (1.0 - (0.0 if p == math.inf else 1.0 / p))
    grid = traj.snapshots[0].grid
    times: list[float] = []
    values: list[float] = []
    skipped = 0
    for t, snap in zip(traj.times, traj.snapshots):
        if t <= 0:
            skipped += 1
            continue
        profile = self_similar_profile(spec, float(t), grid)
        diff = Field(grid, snap.values - profile.values)
        times.append(float(t))
        values.append(t**exponent * discrete_lp_norm(diff, p))
    if skipped:
        log.info("decay_metric_series: skipped %d snapshot(s) at t <= 0", skipped)
    return StudyReport(
        {"t": times, "scaled_distance": values},
        {
            "p": f"{p:g}",
            "mass": f"{spec.mass:.17g}",
            "nu": f"{spec.nu:.17g}",
            "skipped_snapshots": str(skipped),
        },
    )


def rescale_field(f: Field, lam: float) -> Field:
    """Parabolic rescaling: values lam * f on the grid mapped x -> x / lam.

    A field representing u at time t turns into the rescaled solution
    u^lam at time t / lam^2; the grid itself is rescaled, so no
    interpolation happens and the discrete mass is preserved exactly.
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    grid = f.grid
    scaled = GridSpec(grid.x_min / lam, grid.x_max / lam, grid.n_cells)
    return Field(scaled, lam * f.values)


def decay_envelope_check(traj: Trajectory, p: float) -> StudyReport:
    """Envelope series ||u(t)||_p (t+1)^{(1/2)(1-1/p)} and its running max.

    The envelope should stay bounded by a constant C fitted on the initial
    transient (the first fifth of the snapshots); the report flags a
    violation when the running maximum later exceeds 1.05 * C.
    """
    if p != math.inf and p < 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    if len(traj) == 0:
        raise ValueError("trajectory has no snapshots")
    exponent = 0.5 * (1.0 - (0.0 if p == math.inf else 1.0 / p))
    series = np.array(
        [
            (t + 1.0) ** exponent * discrete_lp_norm(snap, p)
            for t, snap in zip(traj.times, traj.snapshots)
        ]
    )
    running = np.maximum.accumulate(series)
    transient = max(1, math.ceil(len(series) / 5))
    fitted_c = float(np.max(series[:transient]))
    later_max = float(np.max(series[transient:])) if transient < len(series) else fitted_c
    violation = later_max > 1.05 * fitted_c and fitted_c > 0.0
    return StudyReport(
        {
            "t": [float(t) for t in traj.times],
            "envelope": [float(s) for s in series],
            "running_max": [float(r) for r in running],
        },
        {
            "p": f"{p:g}",
            "fitted_c": f"{fitted_c:.17g}",
            "violation": "true" if violation else "false",
        },
    )
