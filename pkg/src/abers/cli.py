"""Batch front end: config ingestion, experiment orchestration, CSV emission.

Four experiments are exposed through a single console entry point::

    abers <simulate|converge|asymptote|verify> --config <path> [--out <dir>] [--threads <n>]

simulate    march the split scheme and dump (t, x, u) snapshot rows
converge    temporal self-convergence table over a dt ladder
asymptote   scaled distances to the self-similar profile along a long run,
            plus a profile-vs-solution comparison at the final time
verify      invariant suite: mass bookkeeping, L2 monotonicity and
            oracle cross-checks on the configured grid

Configs are flat ``key = value`` text (grammar documented in the README).
Output CSV is deterministic: identical config bytes yield byte-identical
files, and every file records the config's SHA-256 so outputs from
different configs can never be confused.

Exit codes: 0 success, 2 config error, 3 solver abort, 4 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .asymptotics import ProfileSpec, decay_metric_series, effective_viscosity, self_similar_profile
from .core import (
    Field,
    GridSpec,
    PhysicalParams,
    SolverError,
    box_field,
    cfl_max_dt,
    discrete_lp_norm,
    gaussian_field,
    kernel_eval,
    rectangle_convolution,
)
from .report import StudyReport, emit_csv
from .splitting import SplitSchedule, reference_abe_evolve, self_convergence_study, split_evolve
from .substeps import (
    RelaxationSymbol,
    TridiagonalSystem,
    cn_relaxation_substep,
    spectral_relaxation_exact,
    thomas_solve,
)


class ConfigError(ValueError):
    """Malformed or inconsistent configuration document."""


class VerificationError(SolverError):
    """The verify experiment found at least one failing invariant."""


EXPERIMENTS = ("simulate", "converge", "asymptote", "verify")

_DEFAULT_DX = 0.1

_COMMON_KEYS = {
    "experiment",
    "out_dir",
    "grid.x_min",
    "grid.x_max",
    "grid.n_cells",
    "params.gamma",
    "params.c_nu",
    "initial.kind",
    "initial.center",
    "initial.width",
    "initial.amplitude",
    "initial.height",
    "initial.path",
}
_EXPERIMENT_KEYS = {
    "simulate": {"T", "dt", "record_every"},
    "converge": {"T", "dt_list"},
    "asymptote": {"T", "dt", "p_list"},
    "verify": set(),
}
_KNOWN_KEYS = _COMMON_KEYS | {"T", "dt", "dt_list", "p_list", "record_every"}

_KIND_KEYS = {
    "gaussian": {"initial.center", "initial.width", "initial.amplitude"},
    "box": {"initial.center", "initial.width", "initial.height"},
    "samples": {"initial.path"},
}


# --------------------------------------------------------------------------
# configuration document


@dataclass(frozen=True)
class _Entry:
    value: str
    line: int


def _scan(text: str) -> dict[str, _Entry]:
    """Tokenize ``key = value`` lines; '#' starts a comment."""
    entries: dict[str, _Entry] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key '{key}'")
        if key in entries:
            raise ConfigError(
                f"line {lineno}: duplicate key '{key}' (first set on line {entries[key].line})"
            )
        if not value:
            raise ConfigError(f"line {lineno}: empty value for key '{key}'")
        entries[key] = _Entry(value, lineno)
    return entries


def _fail(entries: dict[str, _Entry], key: str, message: str) -> None:
    entry = entries.get(key)
    where = f"line {entry.line}: " if entry is not None else ""
    raise ConfigError(f"{where}key '{key}': {message}")


def _require(condition: bool, entries: dict[str, _Entry], key: str, message: str) -> None:
    if not condition:
        _fail(entries, key, message)


def _get_str(entries, key, default=None, required=False):
    entry = entries.get(key)
    if entry is None:
        if required:
            raise ConfigError(f"missing required key '{key}'")
        return default
    return entry.value


def _get_float(entries, key, default=None, required=False, allow_inf=False):
    entry = entries.get(key)
    if entry is None:
        if required:
            raise ConfigError(f"missing required key '{key}'")
        return default
    try:
        value = float(entry.value)
    except ValueError:
        raise ConfigError(f"line {entry.line}: key '{key}': not a number: {entry.value!r}") from None
    if math.isnan(value) or (not allow_inf and math.isinf(value)):
        _fail(entries, key, f"must be finite, got {entry.value}")
    return value


def _get_int(entries, key, default=None, required=False):
    entry = entries.get(key)
    if entry is None:
        if required:
            raise ConfigError(f"missing required key '{key}'")
        return default
    try:
        return int(entry.value, 10)
    except ValueError:
        raise ConfigError(f"line {entry.line}: key '{key}': not an integer: {entry.value!r}") from None


def _get_float_list(entries, key, default=None, required=False, allow_inf=False):
    entry = entries.get(key)
    if entry is None:
        if required:
            raise ConfigError(f"missing required key '{key}'")
        return default
    items = [piece.strip() for piece in entry.value.split(",")]
    if any(not piece for piece in items):
        _fail(entries, key, f"empty element in list: {entry.value!r}")
    out = []
    for piece in items:
        try:
            value = float(piece)
        except ValueError:
            raise ConfigError(
                f"line {entry.line}: key '{key}': not a number: {piece!r}"
            ) from None
        if math.isnan(value) or (not allow_inf and math.isinf(value)):
            _fail(entries, key, f"element must be finite, got {piece}")
        out.append(value)
    return tuple(out)


@dataclass(frozen=True)
class InitialSpec:
    """Initial-data descriptor: analytic bump or a samples file."""

    kind: str = "gaussian"
    center: float = 0.0
    width: float = 2.0
    amplitude: float = 0.5
    height: float = 0.5
    path: str | None = None

    def build(self, grid: GridSpec) -> Field:
        if self.kind == "gaussian":
            return gaussian_field(grid, self.center, self.width, self.amplitude)
        if self.kind == "box":
            return box_field(grid, self.center, self.width, self.height)
        samples = np.loadtxt(self.path, dtype=float, ndmin=1)
        if samples.ndim != 1 or samples.size != grid.n_cells:
            raise ConfigError(
                f"key 'initial.path': file {self.path!r} holds "
                f"{samples.size if samples.ndim == 1 else 'non-scalar'} values, "
                f"grid has {grid.n_cells} cells"
            )
        return Field(grid, samples)


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    grid: GridSpec
    params: PhysicalParams
    initial: InitialSpec
    horizon: float | None
    dt: float | None
    dt_list: tuple[float, ...] | None
    p_list: tuple[float, ...]
    record_every: int
    out_dir: str
    config_hash: str


def parse_config(text: str) -> RunConfig:
    """Validate a configuration document into a RunConfig.

    Defaults when keys are omitted: gamma=100, c_nu=0.02, domain
    [-40, 40] at mesh size 0.1, Gaussian initial bump (center 0,
    width 2, amplitude 0.5), p_list=1,2, out_dir='.'.
    """
    entries = _scan(text)

    experiment = _get_str(entries, "experiment", required=True)
    if experiment not in EXPERIMENTS:
        _fail(entries, "experiment", f"must be one of {', '.join(EXPERIMENTS)}; got '{experiment}'")
    allowed = _COMMON_KEYS | _EXPERIMENT_KEYS[experiment]
    for key, entry in entries.items():
        if key not in allowed:
            raise ConfigError(
                f"line {entry.line}: key '{key}' is not used by experiment '{experiment}'"
            )

    x_min = _get_float(entries, "grid.x_min", default=-40.0)
    x_max = _get_float(entries, "grid.x_max", default=40.0)
    _require(x_min < x_max, entries, "grid.x_max", f"domain is empty: [{x_min}, {x_max}]")
    n_default = max(3, int(round((x_max - x_min) / _DEFAULT_DX)))
    n_cells = _get_int(entries, "grid.n_cells", default=n_default)
    _require(n_cells >= 3, entries, "grid.n_cells", f"need at least 3 cells, got {n_cells}")
    grid = GridSpec(x_min, x_max, n_cells)

    gamma = _get_float(entries, "params.gamma", default=100.0)
    _require(gamma > 0, entries, "params.gamma", f"must be positive, got {gamma}")
    c_nu = _get_float(entries, "params.c_nu", default=0.02)
    _require(c_nu >= 0, entries, "params.c_nu", f"must be nonnegative, got {c_nu}")
    params = PhysicalParams(gamma=gamma, c_nu=c_nu)

    kind = _get_str(entries, "initial.kind", default="gaussian")
    if kind not in _KIND_KEYS:
        _fail(entries, "initial.kind", f"must be one of {', '.join(sorted(_KIND_KEYS))}; got '{kind}'")
    for key in entries:
        if key.startswith("initial.") and key != "initial.kind" and key not in _KIND_KEYS[kind]:
            raise ConfigError(
                f"line {entries[key].line}: key '{key}' is not used by initial kind '{kind}'"
            )
    width = _get_float(entries, "initial.width", default=2.0)
    _require(width > 0, entries, "initial.width", f"must be positive, got {width}")
    path = None
    if kind == "samples":
        path = _get_str(entries, "initial.path", required=True)
        _require(Path(path).is_file(), entries, "initial.path", f"file not found: {path!r}")
    initial = InitialSpec(
        kind=kind,
        center=_get_float(entries, "initial.center", default=0.0),
        width=width,
        amplitude=_get_float(entries, "initial.amplitude", default=0.5),
        height=_get_float(entries, "initial.height", default=0.5),
        path=path,
    )

    horizon = None
    dt = None
    dt_list = None
    record_every = _get_int(entries, "record_every", default=1)
    _require(record_every >= 1, entries, "record_every", f"must be >= 1, got {record_every}")
    if experiment in ("simulate", "converge", "asymptote"):
        horizon = _get_float(entries, "T", required=True)
        if experiment == "simulate":
            _require(horizon >= 0, entries, "T", f"must be nonnegative, got {horizon}")
        else:
            _require(horizon > 0, entries, "T", f"must be positive, got {horizon}")
    if experiment in ("simulate", "asymptote"):
        dt = _get_float(entries, "dt", required=True)
        try:
            SplitSchedule.for_horizon(horizon, dt, record_every=record_every)
        except ValueError as exc:
            _fail(entries, "dt", str(exc))
    if experiment == "converge":
        dt_list = _get_float_list(entries, "dt_list", required=True)
        _require(len(dt_list) >= 1, entries, "dt_list", "needs at least one entry")
        _require(all(v > 0 for v in dt_list), entries, "dt_list", "entries must be positive")
        _require(all(v < 1 for v in dt_list), entries, "dt_list", "entries must be below 1")
        _require(
            all(a > b for a, b in zip(dt_list, dt_list[1:])),
            entries,
            "dt_list",
            f"must be strictly decreasing, got {list(dt_list)}",
        )

    p_list = _get_float_list(entries, "p_list", default=(1.0, 2.0), allow_inf=True)
    _require(len(p_list) >= 1, entries, "p_list", "needs at least one entry")
    _require(all(p >= 1 for p in p_list), entries, "p_list", "entries must be >= 1 (inf allowed)")
    _require(len(set(p_list)) == len(p_list), entries, "p_list", "entries must be distinct")

    out_dir = _get_str(entries, "out_dir", default=".")

    try:
        probe = initial.build(grid)
    except ValueError as exc:
        raise ConfigError(f"initial data is invalid: {exc}") from None
    _check_support(probe, entries)

    return RunConfig(
        experiment=experiment,
        grid=grid,
        params=params,
        initial=initial,
        horizon=horizon,
        dt=dt,
        dt_list=dt_list,
        p_list=tuple(p_list),
        record_every=record_every,
        out_dir=out_dir,
        config_hash=hashlib.sha256(text.encode("utf-8")).hexdigest(),
    )


def _check_support(u0: Field, entries: dict[str, _Entry]) -> None:
    """Initial data must live in the inner 80% of the domain.

    "Support" is read numerically: cells above 1e-12 of the peak.
    """
    grid = u0.grid
    peak = float(np.max(np.abs(u0.values)))
    if peak == 0.0:
        return
    occupied = np.abs(u0.values) > 1e-12 * peak
    xs = grid.cell_centers[occupied]
    margin = 0.1 * (grid.x_max - grid.x_min)
    lo, hi = grid.x_min + margin, grid.x_max - margin
    if xs.size and (xs[0] < lo or xs[-1] > hi):
        _fail(
            entries,
            "initial.kind",
            f"initial data reaches outside the inner 80% of the domain "
            f"(occupied [{xs[0]:.3g}, {xs[-1]:.3g}], allowed [{lo:.3g}, {hi:.3g}])",
        )


# --------------------------------------------------------------------------
# experiments


def _base_metadata(cfg: RunConfig, scheme: str) -> dict[str, str]:
    grid = cfg.grid
    return {
        "config": cfg.config_hash,
        "experiment": cfg.experiment,
        "scheme": scheme,
        "gamma": f"{cfg.params.gamma:.17g}",
        "c_nu": f"{cfg.params.c_nu:.17g}",
        "grid": f"[{grid.x_min:.17g} {grid.x_max:.17g}] cells {grid.n_cells}",
    }


def _run_simulate(cfg: RunConfig, out: Path) -> list[Path]:
    u0 = cfg.initial.build(cfg.grid)
    sched = SplitSchedule.for_horizon(cfg.horizon, cfg.dt, record_every=cfg.record_every)
    traj = split_evolve(u0, cfg.params, sched)
    t_col: list[float] = []
    x_col: list[float] = []
    u_col: list[float] = []
    centers = cfg.grid.cell_centers
    for t, snap in zip(traj.times, traj.snapshots):
        t_col.extend([float(t)] * cfg.grid.n_cells)
        x_col.extend(centers.tolist())
        u_col.extend(snap.values.tolist())
    meta = _base_metadata(cfg, "split")
    meta.update({"dt": f"{cfg.dt:.17g}", "n_steps": str(sched.n_steps)})
    report = StudyReport({"t": t_col, "x": x_col, "u": u_col}, meta)
    return [emit_csv(report, out / "trajectory.csv")]


def _run_converge(cfg: RunConfig, out: Path, threads: int) -> list[Path]:
    u0 = cfg.initial.build(cfg.grid)
    study = self_convergence_study(u0, cfg.params, cfg.horizon, cfg.dt_list, threads=threads)
    meta = _base_metadata(cfg, "split")
    meta.update({"T": f"{cfg.horizon:.17g}", **study.metadata})
    report = StudyReport(study.columns, meta)
    return [emit_csv(report, out / "convergence.csv")]


def _snapshot_steps(horizon: float, dt: float, n_steps: int) -> list[int]:
    """Log-spaced snapshot steps plus every decade and the endpoint."""
    targets = set(np.geomspace(max(dt, horizon * 1e-4), horizon, num=33).tolist())
    decade = 1.0
    while decade <= horizon:
        targets.add(decade)
        decade *= 10.0
    steps = {n_steps}
    for t in targets:
        k = round(t / dt)
        if 0 < k <= n_steps:
            steps.add(k)
    return sorted(steps)


def _scaled_label(p: float) -> str:
    if p == math.inf:
        return "scaled_Linf"
    return f"scaled_L{p:g}"


def _run_asymptote(cfg: RunConfig, out: Path) -> list[Path]:
    u0 = cfg.initial.build(cfg.grid)
    sched = SplitSchedule.for_horizon(cfg.horizon, cfg.dt, record_every=max(1, cfg.record_every))
    marks = _snapshot_steps(cfg.horizon, cfg.dt, sched.n_steps)
    traj = split_evolve(u0, cfg.params, sched, record_steps=marks)

    nu = effective_viscosity(cfg.params)
    profile_spec = ProfileSpec(u0.mass, nu)
    series = {p: decay_metric_series(traj, profile_spec, p) for p in cfg.p_list}
    first = series[cfg.p_list[0]]
    columns: dict[str, list] = {"t": list(first.columns["t"])}
    for p in cfg.p_list:
        columns[_scaled_label(p)] = list(series[p].columns["scaled_distance"])
    meta = _base_metadata(cfg, "split")
    meta.update(
        {
            "dt": f"{cfg.dt:.17g}",
            "T": f"{cfg.horizon:.17g}",
            "mass": f"{profile_spec.mass:.17g}",
            "nu": f"{profile_spec.nu:.17g}",
            "skipped_snapshots": first.metadata["skipped_snapshots"],
        }
    )
    decay_path = emit_csv(StudyReport(columns, meta), out / "decay_metrics.csv")

    final = traj.final
    profile = self_similar_profile(profile_spec, traj.times[-1], cfg.grid)
    comp_meta = _base_metadata(cfg, "split")
    comp_meta.update({"t": f"{traj.times[-1]:.17g}", "mass": f"{profile_spec.mass:.17g}", "nu": f"{profile_spec.nu:.17g}"})
    comp = StudyReport(
        {
            "x": cfg.grid.cell_centers.tolist(),
            "u_sim": final.values.tolist(),
            "u_profile": profile.values.tolist(),
        },
        comp_meta,
    )
    comp_path = emit_csv(comp, out / "profile_comparison.csv")
    return [decay_path, comp_path]


# Bounds frozen from measurements on the default configuration; each check
# compares a scale-free observable against a generous multiple of the value
# seen there (margins of one to several orders of magnitude).
_VERIFY_BOUNDS = {
    "convolution_spike_exact": 1e-12,
    "thomas_matches_dense": 1e-10,
    "cn_matches_spectral_oracle": 1e-5,
    "split_mass_conserved": 1e-10,
    "reference_mass_factor": 1e-9,
    "split_l2_monotone": 0.0,
    "cross_solver_distance": 0.1,
    "relaxation_symbol_bounds": 1e-12,
}


def _run_verify(cfg: RunConfig, out: Path) -> list[Path]:
    grid, params = cfg.grid, cfg.params
    u0 = cfg.initial.build(grid)
    dx = grid.dx
    checks: list[tuple[str, float]] = []

    # rectangle rule reproduces a sampled kernel from a unit spike
    spike = np.zeros(grid.n_cells)
    j0 = grid.n_cells // 2
    spike[j0] = 1.0 / dx
    conv = rectangle_convolution(params.kernel, Field(grid, spike))
    offsets = (np.arange(grid.n_cells) - j0) * dx
    expected = np.where(offsets > 0, kernel_eval(params.kernel, offsets), 0.0)
    checks.append(("convolution_spike_exact", float(np.max(np.abs(conv.values - expected)))))

    # banded solver against the dense route on a seeded system
    rng = np.random.default_rng(2024)
    n = 50
    lower = rng.uniform(-0.5, 0.5, n - 1)
    upper = rng.uniform(-0.5, 0.5, n - 1)
    diag = 2.0 + rng.uniform(0.0, 1.0, n)
    rhs = rng.uniform(-1.0, 1.0, n)
    banded = thomas_solve(TridiagonalSystem(lower, diag, upper, rhs))
    dense_matrix = np.diag(diag) + np.diag(lower, -1) + np.diag(upper, 1)
    dense = np.linalg.solve(dense_matrix, rhs)
    checks.append(("thomas_matches_dense", float(np.max(np.abs(banded - dense)))))

    # one relaxation step against the exact spectral flow
    peak = float(np.max(np.abs(u0.values)))
    dt_probe = 0.1
    cn = cn_relaxation_substep(u0, params, dt_probe)
    exact = spectral_relaxation_exact(u0, params, dt_probe)
    rel = float(np.max(np.abs(cn.values - exact.values))) / peak if peak > 0 else 0.0
    checks.append(("cn_matches_spectral_oracle", rel))

    # 50 split steps at 40% of the stability bound: mass and L2 bookkeeping
    dt = 0.4 * cfl_max_dt(params, grid, peak)
    sched = SplitSchedule(dt=min(dt, 0.999), n_steps=50, record_every=10**9)
    l2_trace: list[float] = []

    def l2_observer(step: int, values: np.ndarray) -> None:
        l2_trace.append(math.sqrt(dx * float(np.dot(values, values))))

    traj = split_evolve(u0, params, sched, observer=l2_observer)
    denom = max(discrete_lp_norm(u0, 1), np.finfo(float).tiny)
    checks.append(("split_mass_conserved", abs(traj.final.mass - u0.mass) / denom))

    ref = reference_abe_evolve(u0, params, sched)
    m0_rect = dx * float(np.sum(kernel_eval(params.kernel, np.arange(grid.n_cells) * dx)))
    factor = 1.0 + params.c_nu * sched.dt * (m0_rect - 1.0)
    predicted = u0.mass * factor**sched.n_steps
    checks.append(("reference_mass_factor", abs(ref.final.mass - predicted) / denom))

    worst_rise = max(b - a for a, b in zip(l2_trace, l2_trace[1:])) if len(l2_trace) > 1 else 0.0
    checks.append(("split_l2_monotone", float(worst_rise)))

    dist = discrete_lp_norm(Field(grid, traj.final.values - ref.final.values), 2)
    l2_0 = discrete_lp_norm(u0, 2)
    checks.append(("cross_solver_distance", dist / l2_0 if l2_0 > 0 else 0.0))

    xi = 2.0 * math.pi * np.fft.fftfreq(grid.n_cells, d=dx)
    symbol = RelaxationSymbol(params.c_nu, 1.0)
    magnitudes = np.abs(symbol.at(xi))
    drift = max(float(np.max(magnitudes)) - 1.0, abs(complex(symbol.at(0.0)) - 1.0))
    checks.append(("relaxation_symbol_bounds", drift))

    names = [name for name, _ in checks]
    observed = [value for _, value in checks]
    bounds = [_VERIFY_BOUNDS[name] for name in names]
    passed = [1.0 if value <= bound else 0.0 for value, bound in zip(observed, bounds)]
    report = StudyReport(
        {"check": names, "observed": observed, "bound": bounds, "passed": passed},
        _base_metadata(cfg, "verify"),
    )
    path = emit_csv(report, out / "verify.csv")
    failures = [name for name, ok in zip(names, passed) if not ok]
    if failures:
        raise VerificationError(
            f"{len(failures)} of {len(names)} checks failed: {', '.join(failures)}"
        )
    return [path]


def run_experiment(cfg: RunConfig, *, out_dir: str | None = None, threads: int = 1) -> list[Path]:
    """Execute the configured experiment; returns the emitted file paths.

    Solver failures propagate as SolverError (the CLI maps them to exit
    code 3); filesystem failures propagate as OSError (exit code 4).
    """
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")
    out = Path(out_dir if out_dir is not None else cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if cfg.experiment == "simulate":
        return _run_simulate(cfg, out)
    if cfg.experiment == "converge":
        return _run_converge(cfg, out, threads)
    if cfg.experiment == "asymptote":
        return _run_asymptote(cfg, out)
    return _run_verify(cfg, out)


# --------------------------------------------------------------------------
# entry point


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="abers",
        description="Splitting solver experiments for the augmented Burgers equation.",
    )
    parser.add_argument("experiment", choices=EXPERIMENTS, help="experiment to run")
    parser.add_argument("--config", required=True, metavar="PATH", help="configuration file")
    parser.add_argument("--out", default=None, metavar="DIR", help="output directory (overrides out_dir)")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for converge")
    args = parser.parse_args(argv)

    try:
        raw = Path(args.config).read_bytes()
    except OSError as exc:
        print(f"abers: i/o error: {exc}", file=sys.stderr)
        return 4
    try:
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigError(f"config is not valid UTF-8: {exc}") from None
        cfg = parse_config(text)
        if cfg.experiment != args.experiment:
            raise ConfigError(
                f"config sets experiment '{cfg.experiment}' but the command line "
                f"asked for '{args.experiment}'"
            )
        paths = run_experiment(cfg, out_dir=args.out, threads=args.threads)
    except ConfigError as exc:
        print(f"abers: config error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"abers: solver abort: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"abers: i/o error: {exc}", file=sys.stderr)
        return 4
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
