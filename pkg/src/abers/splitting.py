"""Lie-Trotter driver, trajectory records, and the explicit reference solver.

One macro step of the split solver applies the explicit Burgers substep over
dt and then the Crank-Nicolson relaxation substep over dt. The driver only
composes the substeps: the snapshot at step n+1 is exactly
``cn_relaxation_substep(burgers_substep(snapshot_n))``.

The reference solver integrates the full equation explicitly in one update
per step, approximating the convolution with the rectangle rule; it exists
for cross-validation and is not meant for long horizons.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Collection, Sequence

import numpy as np

from abers.core import (
    BlowUpError,
    Field,
    PhysicalParams,
    StabilityError,
    cfl_max_dt,
    kernel_eval,
    _lp_norm,
)
from abers.report import StudyReport
from abers.substeps import _burgers_update, _check_boundary, _relaxation_update

__all__ = [
    "SplitSchedule",
    "Trajectory",
    "estimate_order",
    "reference_abe_evolve",
    "self_convergence_study",
    "split_evolve",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitSchedule:
    """Macro time step, step count, and snapshot stride.

    dt must lie in (0, 1): the splitting's accuracy analysis only covers
    sub-unit steps, and the harness never needs more.
    """

    dt: float
    n_steps: int
    record_every: int = 1

    def __post_init__(self) -> None:
        if not 0.0 < self.dt < 1.0:
            raise ValueError(f"dt must lie in (0, 1), got {self.dt}")
        if self.n_steps < 0:
            raise ValueError(f"n_steps must be nonnegative, got {self.n_steps}")
        if self.record_every < 1:
            raise ValueError(f"record_every must be positive, got {self.record_every}")

    @property
    def horizon(self) -> float:
        return self.n_steps * self.dt

    @classmethod
    def for_horizon(cls, horizon: float, dt: float, record_every: int = 1) -> "SplitSchedule":
        """Schedule reaching ``horizon`` in whole steps of size dt.

        Raises:
            ValueError: if dt does not divide the horizon to within 1e-12.
        """
        n = round(horizon / dt)
        if abs(n * dt - horizon) > 1e-12 * max(1.0, abs(horizon)):
            raise ValueError(f"dt={dt} does not divide the horizon {horizon}")
        return cls(dt, n, record_every)


@dataclass(frozen=True)
class Trajectory:
    """Ordered (time, field) snapshots of one run plus its metadata."""

    times: np.ndarray
    snapshots: tuple[Field, ...]
    params: PhysicalParams
    schedule: SplitSchedule
    scheme: str
    metadata: dict = dataclass_field(default_factory=dict)

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        if times.shape != (len(self.snapshots),):
            raise ValueError("times and snapshots must have matching lengths")
        if times.size and np.any(np.diff(times) <= 0):
            raise ValueError("snapshot times must be strictly increasing")
        grids = {f.grid for f in self.snapshots}
        if len(grids) > 1:
            raise ValueError("all snapshots must share one grid")
        times.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "snapshots", tuple(self.snapshots))

    def __len__(self) -> int:
        return len(self.snapshots)

    @property
    def final(self) -> Field:
        return self.snapshots[-1]

    def at_time(self, t: float) -> Field:
        """Snapshot at time t (within 1e-9 relative).

        Raises:
            KeyError: if no snapshot was recorded at that time.
        """
        idx = np.nonzero(np.abs(self.times - t) <= 1e-9 * max(1.0, abs(t)))[0]
        if idx.size == 0:
            raise KeyError(f"no snapshot at t={t}")
        return self.snapshots[int(idx[0])]


def _record_set(sched: SplitSchedule, record_steps: Collection[int] | None) -> set[int]:
    if record_steps is None:
        chosen = set(range(0, sched.n_steps + 1, sched.record_every))
    else:
        chosen = {int(k) for k in record_steps}
        bad = [k for k in chosen if not 0 <= k <= sched.n_steps]
        if bad:
            raise ValueError(f"record steps {sorted(bad)} outside [0, {sched.n_steps}]")
    chosen.update((0, sched.n_steps))
    return chosen


def _guard(values: np.ndarray, step: int) -> None:
    if not np.all(np.isfinite(values)):
        raise BlowUpError(step)


def split_evolve(
    u0: Field,
    params: PhysicalParams,
    sched: SplitSchedule,
    *,
    record_steps: Collection[int] | None = None,
    include_half_steps: bool = False,
    observer: Callable[[int, np.ndarray], None] | None = None,
    one_sided_mixed_term: bool = False,
) -> Trajectory:
    """Run the split solver: n_steps of (relaxation o Burgers) from u0.

    Snapshots are stored at step indices selected by ``sched.record_every``
    (or the explicit ``record_steps``), always including the initial and
    final states. With ``include_half_steps`` the post-Burgers intermediate
    state is stored at t_{n+1/2} for every recorded step n+1.

    ``observer(step, values)`` is called after every completed macro step
    with the working array; it is reused between steps, so copy it if kept.

    Raises:
        StabilityError: if dt exceeds the explicit bound for the current
            state (re-checked against the evolving peak every step).
        BlowUpError: if non-finite values appear (diagnostic step index).
    """
    chosen = _record_set(sched, record_steps)
    dx = u0.grid.dx
    times: list[float] = []
    snaps: list[Field] = []

    def record(step: int, values: np.ndarray, half: bool = False) -> None:
        t = (step - 0.5) * sched.dt if half else step * sched.dt
        _check_boundary(values, "split_evolve")
        times.append(t)
        snaps.append(Field(u0.grid, values))

    work = u0.values.copy()
    if 0 in chosen:
        record(0, work)
    for step in range(1, sched.n_steps + 1):
        limit = cfl_max_dt(params, u0.grid, float(np.max(np.abs(work))))
        if sched.dt > limit * (1.0 + 1e-9):
            raise StabilityError(
                f"dt={sched.dt:.6g} exceeds the stability bound {limit:.6g} at step {step}"
            )
        half = _burgers_update(work, dx, params.gamma, sched.dt)
        if include_half_steps and step in chosen:
            _guard(half, step)
            record(step, half, half=True)
        work = _relaxation_update(half, dx, params.c_nu, sched.dt, one_sided_mixed_term)
        _guard(work, step)
        if observer is not None:
            observer(step, work)
        if step in chosen:
            record(step, work)
    return Trajectory(
        np.array(times),
        tuple(snaps),
        params,
        sched,
        scheme="split",
        metadata={"transport": "centered", "mixed_term": "one_sided" if one_sided_mixed_term else "centered"},
    )


def reference_abe_evolve(
    u0: Field,
    params: PhysicalParams,
    sched: SplitSchedule,
    *,
    record_steps: Collection[int] | None = None,
) -> Trajectory:
    """Explicit unsplit reference scheme with rectangle-rule convolution.

    One update per step: the Engquist-Osher/centered-diffusion increment
    plus the explicit relaxation increment
    c_nu dt (K*u - u + centered gradient), with K*u from the rectangle rule.

    Stability needs the same explicit bound as the Burgers substep and
    additionally c_nu * dt <= 1 (the relaxation increment is explicit too).
    """
    chosen = _record_set(sched, record_steps)
    n = u0.grid.n_cells
    dx = u0.grid.dx
    if params.c_nu * sched.dt > 1.0:
        raise StabilityError(
            f"explicit relaxation needs c_nu*dt <= 1, got {params.c_nu * sched.dt:.6g}"
        )
    weights = dx * kernel_eval(params.kernel, np.arange(n) * dx)
    times: list[float] = []
    snaps: list[Field] = []
    work = u0.values.copy()
    if 0 in chosen:
        _check_boundary(work, "reference_abe_evolve")
        times.append(0.0)
        snaps.append(Field(u0.grid, work))
    for step in range(1, sched.n_steps + 1):
        limit = cfl_max_dt(params, u0.grid, float(np.max(np.abs(work))))
        if sched.dt > limit * (1.0 + 1e-9):
            raise StabilityError(
                f"dt={sched.dt:.6g} exceeds the stability bound {limit:.6g} at step {step}"
            )
        conv = np.convolve(work, weights)[:n]
        grad = np.zeros_like(work)
        grad[1:-1] = (work[2:] - work[:-2]) / (2.0 * dx)
        grad[0] = work[1] / (2.0 * dx)
        grad[-1] = -work[-2] / (2.0 * dx)
        work = _burgers_update(work, dx, params.gamma, sched.dt) + (
            params.c_nu * sched.dt
        ) * (conv - work + grad)
        _guard(work, step)
        if step in chosen:
            _check_boundary(work, "reference_abe_evolve")
            times.append(step * sched.dt)
            snaps.append(Field(u0.grid, work))
    return Trajectory(
        np.array(times),
        tuple(snaps),
        params,
        sched,
        scheme="reference",
        metadata={"transport": "centered", "convolution": "rectangle"},
    )


def estimate_order(dt_values: Sequence[float], errors: Sequence[float]) -> float | None:
    """Least-squares slope of log(error) against log(dt).

    Returns None (undefined) when any error vanishes or fewer than two
    points are given, rather than propagating -inf through the fit.
    """
    dt_values = np.asarray(dt_values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if dt_values.size < 2 or np.any(errors <= 0.0):
        return None
    slope = np.polyfit(np.log(dt_values), np.log(errors), 1)[0]
    return float(slope)


def self_convergence_study(
    u0: Field,
    params: PhysicalParams,
    horizon: float,
    dt_list: Sequence[float],
    *,
    threads: int = 1,
) -> StudyReport:
    """Temporal self-convergence table on a fixed grid.

    For each dt in the (strictly descending) list, runs the split solver
    with steps dt and dt/2 from the same initial data and records the L2
    distance between the two endpoint states. The report carries per-row
    pairwise orders log2(e_k / e_{k+1}) (NaN in the first row) and the
    least-squares slope in its metadata (``slope=undefined`` when all
    errors vanish).
    """
    dts = [float(dt) for dt in dt_list]
    if len(dts) < 1:
        raise ValueError("dt_list must be nonempty")
    if any(b >= a for a, b in zip(dts, dts[1:])):
        raise ValueError(f"dt_list must be strictly descending, got {dts}")

    def error_at(dt: float) -> float:
        ends = []
        for d in (dt, dt / 2.0):
            sched = SplitSchedule.for_horizon(horizon, d, record_every=max(1, int(round(horizon / d))))
            ends.append(split_evolve(u0, params, sched).final)
        return _lp_norm(ends[0].values - ends[1].values, u0.grid.dx, 2)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            errors = list(pool.map(error_at, dts))
    else:
        errors = [error_at(dt) for dt in dts]

    orders = [math.nan]
    for (e_prev, e_next) in zip(errors, errors[1:]):
        orders.append(math.log2(e_prev / e_next) if e_prev > 0 and e_next > 0 else math.nan)
    slope = estimate_order(dts, errors)
    metadata = {"slope": "undefined" if slope is None else f"{slope:.17g}"}
    log.info("self-convergence slope: %s", metadata["slope"])
    return StudyReport(
        {"dt": dts, "error": errors, "observed_order": orders},
        metadata,
    )
