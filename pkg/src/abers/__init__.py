"""Operator-splitting solver for the augmented Burgers equation.

The solver advances u_t - (u^2/2)_x = (1/gamma) u_xx + c_nu (K*u - u + u_x)
by alternating an explicit finite-volume Burgers substep with an implicit
Crank-Nicolson relaxation substep, and ships the reference oracles
(spectral exact relaxation flow, explicit rectangle-convolution scheme) and
the experiment harness used to study convergence order and large-time
self-similar behavior.
"""

from abers.core import (
    Field,
    GridSpec,
    KernelSpec,
    PhysicalParams,
    cfl_max_dt,
    discrete_lp_norm,
    kernel_eval,
    kernel_moments,
    rectangle_convolution,
)
from abers.splitting import SplitSchedule, Trajectory, split_evolve, reference_abe_evolve

__all__ = [
    "Field",
    "GridSpec",
    "KernelSpec",
    "PhysicalParams",
    "SplitSchedule",
    "Trajectory",
    "cfl_max_dt",
    "discrete_lp_norm",
    "kernel_eval",
    "kernel_moments",
    "rectangle_convolution",
    "reference_abe_evolve",
    "split_evolve",
]
