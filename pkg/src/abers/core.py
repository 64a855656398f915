"""Grids, fields, physical parameters, and the relaxation memory kernel.

Plain material the solvers are built from: uniform cell-centered 1-D grids,
immutable cell-value fields, discrete L^p norms, the one-sided exponential
kernel with its moments, the stability bound for the explicit Burgers substep,
and the rectangle-rule convolution used by the explicit reference scheme.

All operations are pure functions of their inputs; ``Field`` values are
read-only once constructed, so everything here is safe to evaluate
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BlowUpError",
    "DomainTooSmallError",
    "Field",
    "GridSpec",
    "KernelSpec",
    "PhysicalParams",
    "SingularSystemError",
    "SolverError",
    "StabilityError",
    "box_field",
    "cfl_max_dt",
    "discrete_lp_norm",
    "double_box_field",
    "gaussian_field",
    "kernel_eval",
    "kernel_moments",
    "rectangle_convolution",
]


# -----------------------------------------------------------------------------
# Errors
# -----------------------------------------------------------------------------

class SolverError(RuntimeError):
    """Base class for runtime solver failures (CLI exit code 3)."""


class StabilityError(SolverError):
    """Requested time step violates the explicit stability bound."""


class SingularSystemError(SolverError):
    """Tridiagonal elimination encountered a vanishing pivot."""


class DomainTooSmallError(SolverError):
    """Spectral transform detected non-negligible periodic wrap-around."""


class BlowUpError(SolverError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, step: int, message: str | None = None):
        self.step = step
        super().__init__(message or f"non-finite values after step {step}")


# -----------------------------------------------------------------------------
# Domain types
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Uniform cell-centered grid on [x_min, x_max].

    Cell j is centered at ``x_min + (j + 1/2) * dx`` with
    ``dx = (x_max - x_min) / n_cells``.
    """

    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self) -> None:
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min must be < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_cells < 3:
            raise ValueError(f"n_cells must be at least 3, got {self.n_cells}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def cell_centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass(frozen=True, eq=False)
class Field:
    """Cell values of the solution at one time level (value semantics).

    The value array is copied on construction and marked read-only, so a
    ``Field`` can be shared freely between threads and snapshots.
    """

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float, copy=True)
        if values.ndim != 1 or values.shape[0] != self.grid.n_cells:
            raise ValueError(
                f"values must be a 1-D array of length {self.grid.n_cells}, "
                f"got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must all be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def mass(self) -> float:
        """Discrete mass dx * sum(values)."""
        return self.grid.dx * float(self.values.sum())

    def with_values(self, values: np.ndarray) -> "Field":
        """A new field on the same grid with different values."""
        return Field(self.grid, values)

    @classmethod
    def zeros(cls, grid: GridSpec) -> "Field":
        return cls(grid, np.zeros(grid.n_cells))


@dataclass(frozen=True, eq=False)
class KernelSpec:
    """Relaxation memory kernel.

    ``exponential`` is the one-sided kernel ``e^{-z}`` on z > 0 (value 0 at
    z = 0: indicator of the open half-line). ``tabulated`` kernels are given
    by sample abscissae and nonnegative values with finite support; their
    moments come from composite trapezoid quadrature, and the unit-mass /
    unit-first-moment condition is enforced at quadrature accuracy (1e-4)
    rather than the analytic path's 1e-10.
    """

    kind: str = "exponential"
    abscissae: np.ndarray | None = None
    samples: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("exponential", "tabulated"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "exponential":
            if self.abscissae is not None or self.samples is not None:
                raise ValueError("exponential kernel takes no samples")
            return
        z = np.asarray(self.abscissae, dtype=float)
        w = np.asarray(self.samples, dtype=float)
        if z.ndim != 1 or z.shape != w.shape or z.size < 2:
            raise ValueError("tabulated kernel needs matching 1-D abscissae and samples")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(w))):
            raise ValueError("tabulated kernel samples must be finite")
        if np.any(np.diff(z) <= 0):
            raise ValueError("tabulated kernel abscissae must be strictly increasing")
        if np.any(w < 0):
            raise ValueError("tabulated kernel values must be nonnegative")
        z.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "abscissae", z)
        object.__setattr__(self, "samples", w)
        m0 = float(np.trapezoid(w, z))
        m1 = float(np.trapezoid(z * w, z))
        if abs(m0 - 1.0) > 1e-4 or abs(m1 - 1.0) > 1e-4:
            raise ValueError(
                f"kernel must have unit mass and unit first moment, got "
                f"m0={m0:.6g}, m1={m1:.6g}"
            )

    @classmethod
    def exponential(cls) -> "KernelSpec":
        return cls()

    @classmethod
    def tabulated(cls, abscissae: np.ndarray, samples: np.ndarray) -> "KernelSpec":
        return cls("tabulated", abscissae, samples)


@dataclass(frozen=True)
class PhysicalParams:
    """Model coefficients: thermo-viscous 1/gamma and relaxation c_nu."""

    gamma: float = 100.0
    c_nu: float = 0.02
    kernel: KernelSpec = field(default_factory=KernelSpec)

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.c_nu < 0:
            raise ValueError(f"c_nu must be nonnegative, got {self.c_nu}")


# -----------------------------------------------------------------------------
# Operations
# -----------------------------------------------------------------------------

def discrete_lp_norm(f: Field, p: float) -> float:
    """Discrete L^p norm (dx * sum |f_j|^p)^(1/p); max |f_j| for p = inf.

    Raises:
        ValueError: if p < 1.
    """
    if p != math.inf and p < 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    return _lp_norm(f.values, f.grid.dx, p)


def _lp_norm(values: np.ndarray, dx: float, p: float) -> float:
    if values.size == 0:
        return 0.0
    if p == math.inf:
        return float(np.max(np.abs(values)))
    absv = np.abs(values)
    if p == 1:
        return dx * float(absv.sum())
    if p == 2:
        return math.sqrt(dx * float(absv.dot(absv)))
    return float((dx * np.sum(absv**p)) ** (1.0 / p))


def kernel_eval(kernel: KernelSpec, z):
    """Kernel value K(z); 0 on z <= 0 and outside the tabulated support."""
    arr = np.asarray(z, dtype=float)
    if kernel.kind == "exponential":
        out = np.where(arr > 0.0, np.exp(-np.maximum(arr, 0.0)), 0.0)
    else:
        interp = np.interp(arr, kernel.abscissae, kernel.samples, left=0.0, right=0.0)
        out = np.where(arr > 0.0, interp, 0.0)
    return float(out) if arr.ndim == 0 else out


def kernel_moments(kernel: KernelSpec) -> tuple[float, float, float]:
    """Moments (m0, m1, m2) = (int K, int z K, int z^2 K).

    Analytic for the exponential kernel; composite trapezoid quadrature for
    tabulated kernels.
    """
    if kernel.kind == "exponential":
        return (1.0, 1.0, 2.0)
    z = kernel.abscissae
    w = kernel.samples
    return (
        float(np.trapezoid(w, z)),
        float(np.trapezoid(z * w, z)),
        float(np.trapezoid(z * z * w, z)),
    )


def cfl_max_dt(params: PhysicalParams, grid: GridSpec, u0_max: float) -> float:
    """Largest stable time step for the explicit Burgers substep.

    Saturates (max|u|)^2 dt/dx + (2/gamma) dt/dx^2 <= 1 with equality.
    """
    dx = grid.dx
    return 1.0 / (u0_max**2 / dx + 2.0 / (params.gamma * dx * dx))


def rectangle_convolution(kernel: KernelSpec, f: Field) -> Field:
    """Rectangle-rule convolution (K*f)_j = dx * sum_{m>=1} K(m dx) f_{j-m}.

    Strictly one-sided for the exponential kernel (K(0) = 0 drops the m = 0
    term); the field is extended by zero outside the grid, so callers must
    size domains large enough that the truncated tail is negligible.
    """
    n = f.grid.n_cells
    dx = f.grid.dx
    weights = dx * kernel_eval(kernel, np.arange(n) * dx)
    return Field(f.grid, np.convolve(f.values, weights)[:n])


# -----------------------------------------------------------------------------
# Initial-data constructors (harness plumbing)
# -----------------------------------------------------------------------------

def gaussian_field(grid: GridSpec, center: float, width: float, amplitude: float) -> Field:
    """Gaussian bump amplitude * exp(-(x-center)^2 / (2 width^2))."""
    if width <= 0:
        raise ValueError(f"gaussian width must be positive, got {width}")
    x = grid.cell_centers
    return Field(grid, amplitude * np.exp(-((x - center) ** 2) / (2.0 * width**2)))


def box_field(grid: GridSpec, center: float, width: float, height: float) -> Field:
    """Indicator box of the given width and height centered at `center`."""
    if width <= 0:
        raise ValueError(f"box width must be positive, got {width}")
    x = grid.cell_centers
    inside = np.abs(x - center) < 0.5 * width
    return Field(grid, np.where(inside, height, 0.0))


def double_box_field(grid: GridSpec, center: float, width: float, height: float) -> Field:
    """Asymmetric pair of boxes: full-height box left of `center`, half right.

    Compactly supported on [center - width, center + width]; handy as a rough
    (H^1 but not smooth) initial datum for convergence studies.
    """
    if width <= 0:
        raise ValueError(f"box width must be positive, got {width}")
    x = grid.cell_centers
    left = (x > center - width) & (x < center)
    right = (x >= center) & (x < center + width)
    return Field(grid, height * left + 0.5 * height * right)
