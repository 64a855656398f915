"""Tests for the command-line layer: config parsing with line-numbered
diagnostics, experiment execution, output files, and exit codes."""

import hashlib
import math
from pathlib import Path

import numpy as np
import pytest

from abers.cli import (
    ConfigError,
    VerificationError,
    main,
    parse_config,
    run_experiment,
)

MINIMAL_SIMULATE = "experiment = simulate\nT = 1.0\ndt = 0.1\n"


def read_csv(path):
    """Parse an emitted CSV into (metadata dict, column dict)."""
    meta = {}
    rows = []
    header = None
    for raw in Path(path).read_text().splitlines():
        if raw.startswith("#"):
            key, _, value = raw[1:].strip().partition("=")
            meta[key.strip()] = value.strip()
        elif header is None:
            header = raw.split(",")
        else:
            rows.append(raw.split(","))
    columns = {name: [row[i] for row in rows] for i, name in enumerate(header)}
    return meta, columns


# ---------------------------------------------------------------------------
# parsing: defaults and the happy path


def test_minimal_config_fills_documented_defaults():
    cfg = parse_config(MINIMAL_SIMULATE)
    assert cfg.experiment == "simulate"
    assert (cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_cells) == (-40.0, 40.0, 800)
    assert cfg.params.gamma == 100.0
    assert cfg.params.c_nu == 0.02
    assert (cfg.initial.kind, cfg.initial.center, cfg.initial.width) == ("gaussian", 0.0, 2.0)
    assert cfg.initial.amplitude == 0.5
    assert cfg.horizon == 1.0
    assert cfg.dt == 0.1
    assert cfg.dt_list is None
    assert cfg.p_list == (1.0, 2.0)
    assert cfg.record_every == 1
    assert cfg.out_dir == "."


def test_config_hash_is_sha256_of_raw_text():
    cfg = parse_config(MINIMAL_SIMULATE)
    assert cfg.config_hash == hashlib.sha256(MINIMAL_SIMULATE.encode()).hexdigest()
    # any textual difference, even a comment, changes the hash
    other = parse_config(MINIMAL_SIMULATE + "# note\n")
    assert other.config_hash != cfg.config_hash


def test_comments_and_blank_lines_are_ignored():
    text = "\n# full-line comment\nexperiment = simulate  # trailing\n\nT = 1.0\ndt = 0.1\n"
    assert parse_config(text).experiment == "simulate"


def test_infinity_allowed_in_p_list():
    text = "experiment = asymptote\nT = 10\ndt = 0.5\np_list = 1, 2, inf\n"
    assert parse_config(text).p_list == (1.0, 2.0, math.inf)


# ---------------------------------------------------------------------------
# parsing: diagnostics carry the key name and line number


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("experiment simulate\n", "line 1: expected 'key = value'"),
        ("experiment = simulate\nbogus_key = 1\n", "line 2: unknown key 'bogus_key'"),
        ("experiment = simulate\nT = 1\nT = 2\ndt = 0.1\n", "line 3: duplicate key 'T'"),
        ("experiment = simulate\nT =\n", "line 2: empty value"),
        ("experiment = warp\n", "key 'experiment': must be one of"),
        ("experiment = simulate\nT = 1\ndt = 0.1\ndt_list = 0.1\n",
         "line 4: key 'dt_list' is not used by experiment 'simulate'"),
        ("experiment = simulate\nT = 1\ndt = 0.1\ninitial.path = x\n",
         "key 'initial.path' is not used by initial kind 'gaussian'"),
        ("experiment = simulate\nT = 1\ndt = 0.1\ninitial.width = 0\n",
         "line 4: key 'initial.width': must be positive"),
        ("experiment = converge\ndt_list = 0.2, 0.1\n", "missing required key 'T'"),
        ("experiment = simulate\nT = soon\ndt = 0.1\n",
         "line 2: key 'T': not a number: 'soon'"),
        ("experiment = simulate\nT = 1\ndt = 0.1\ngrid.n_cells = 12.5\n",
         "not an integer"),
        ("experiment = simulate\nT = 1\ndt = 0.3\n", "key 'dt': dt=0.3 does not divide"),
        ("experiment = converge\nT = 1\ndt_list = 0.1, 0.2\n", "strictly decreasing"),
        ("experiment = converge\nT = 1\ndt_list = 2.0, 0.5\n", "below 1"),
        ("experiment = asymptote\nT = 1\ndt = 0.1\np_list = 1, 1\n", "must be distinct"),
        ("experiment = asymptote\nT = 1\ndt = 0.1\np_list = 0.5\n", "must be >= 1"),
        ("experiment = simulate\nT = 1\ndt = 0.1\ngrid.x_min = 5\ngrid.x_max = -5\n",
         "domain is empty"),
        ("experiment = simulate\nT = 1\ndt = 0.1\ngrid.n_cells = 2\n", "at least 3 cells"),
        ("experiment = simulate\nT = 1\ndt = 0.1\nparams.gamma = 0\n", "must be positive"),
        ("experiment = simulate\nT = 1\ndt = 0.1\nparams.c_nu = -0.1\n", "nonnegative"),
        ("experiment = simulate\nT = -1\ndt = 0.1\n", "key 'T': must be nonnegative"),
        ("experiment = converge\nT = 0\ndt_list = 0.1\n", "key 'T': must be positive"),
        ("experiment = simulate\nT = 1\ndt = 0.1\nrecord_every = 0\n", "must be >= 1"),
    ],
)
def test_parse_errors_cite_key_and_line(text, fragment):
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text)
    assert fragment in str(excinfo.value)


def test_missing_experiment_key():
    with pytest.raises(ConfigError, match="missing required key 'experiment'"):
        parse_config("out_dir = somewhere\n")


def test_initial_data_must_stay_in_inner_80_percent():
    text = "experiment = simulate\nT = 1\ndt = 0.1\ninitial.center = 35\n"
    with pytest.raises(ConfigError, match="inner 80%"):
        parse_config(text)


# ---------------------------------------------------------------------------
# samples initial data


def samples_config(path, n_cells=12):
    return (
        "experiment = simulate\nT = 0\ndt = 0.1\n"
        f"grid.x_min = -3\ngrid.x_max = 3\ngrid.n_cells = {n_cells}\n"
        f"initial.kind = samples\ninitial.path = {path}\n"
    )


def test_samples_file_round_trip(tmp_path):
    values = np.zeros(12)
    values[5:7] = 0.25
    sample_file = tmp_path / "u0.txt"
    np.savetxt(sample_file, values)
    cfg = parse_config(samples_config(sample_file))
    u0 = cfg.initial.build(cfg.grid)
    np.testing.assert_array_equal(u0.values, values)


def test_samples_file_must_exist(tmp_path):
    with pytest.raises(ConfigError, match="file not found"):
        parse_config(samples_config(tmp_path / "missing.txt"))


def test_samples_count_must_match_grid(tmp_path):
    sample_file = tmp_path / "u0.txt"
    np.savetxt(sample_file, np.zeros(5))
    with pytest.raises(ConfigError, match="initial data is invalid"):
        parse_config(samples_config(sample_file))


def test_samples_reject_unreadable_content(tmp_path):
    sample_file = tmp_path / "u0.txt"
    sample_file.write_text("not, numbers, here\n")
    with pytest.raises(ConfigError, match="initial data is invalid"):
        parse_config(samples_config(sample_file))


# ---------------------------------------------------------------------------
# experiments end to end


def small_grid_lines(n_cells=250):
    return f"grid.x_min = -25\ngrid.x_max = 25\ngrid.n_cells = {n_cells}\n"


def test_simulate_writes_trajectory(tmp_path):
    text = (
        "experiment = simulate\nT = 0.5\ndt = 0.1\n" + small_grid_lines()
        + "initial.amplitude = 0.3\n"
    )
    paths = run_experiment(parse_config(text), out_dir=str(tmp_path))
    assert [p.name for p in paths] == ["trajectory.csv"]
    meta, cols = read_csv(paths[0])
    assert meta["experiment"] == "simulate"
    assert meta["scheme"] == "split"
    assert meta["n_steps"] == "5"
    assert list(cols) == ["t", "x", "u"]
    times = np.array(cols["t"], dtype=float)
    assert len(times) == 6 * 250  # six snapshots, one row per cell
    block0 = np.array(cols["u"][:250], dtype=float)
    u0 = parse_config(text).initial.build(parse_config(text).grid)
    np.testing.assert_allclose(block0, u0.values, rtol=0.0, atol=0.0)


def test_simulate_record_every_thins_snapshots(tmp_path):
    text = (
        "experiment = simulate\nT = 1\ndt = 0.1\nrecord_every = 5\n"
        + small_grid_lines()
    )
    (path,) = run_experiment(parse_config(text), out_dir=str(tmp_path))
    _, cols = read_csv(path)
    assert sorted(set(np.array(cols["t"], dtype=float).tolist())) == [0.0, 0.5, 1.0]


def test_simulate_zero_horizon_emits_initial_state_only(tmp_path):
    text = "experiment = simulate\nT = 0\ndt = 0.1\n" + small_grid_lines()
    (path,) = run_experiment(parse_config(text), out_dir=str(tmp_path))
    _, cols = read_csv(path)
    assert len(cols["t"]) == 250


def test_simulate_output_is_deterministic(tmp_path):
    text = "experiment = simulate\nT = 0.5\ndt = 0.1\n" + small_grid_lines()
    cfg = parse_config(text)
    (a,) = run_experiment(cfg, out_dir=str(tmp_path / "a"))
    (b,) = run_experiment(cfg, out_dir=str(tmp_path / "b"))
    assert a.read_bytes() == b.read_bytes()


def test_converge_writes_study_table(tmp_path):
    text = (
        "experiment = converge\nT = 1\ndt_list = 0.2, 0.1\n" + small_grid_lines()
    )
    (path,) = run_experiment(parse_config(text), out_dir=str(tmp_path))
    assert path.name == "convergence.csv"
    meta, cols = read_csv(path)
    assert list(cols) == ["dt", "error", "observed_order"]
    assert [float(v) for v in cols["dt"]] == [0.2, 0.1]
    assert float(meta["slope"]) > 0.5
    errors = [float(v) for v in cols["error"]]
    assert errors[0] > errors[1] > 0.0


def test_converge_threads_give_identical_bytes(tmp_path):
    text = "experiment = converge\nT = 1\ndt_list = 0.2, 0.1\n" + small_grid_lines()
    cfg = parse_config(text)
    (a,) = run_experiment(cfg, out_dir=str(tmp_path / "serial"), threads=1)
    (b,) = run_experiment(cfg, out_dir=str(tmp_path / "pool"), threads=2)
    assert a.read_bytes() == b.read_bytes()


def test_asymptote_writes_decay_and_profile_files(tmp_path):
    text = (
        "experiment = asymptote\nT = 2\ndt = 0.1\np_list = 2, inf\n"
        + small_grid_lines()
        + "initial.amplitude = 0.3\n"
    )
    paths = run_experiment(parse_config(text), out_dir=str(tmp_path))
    assert [p.name for p in paths] == ["decay_metrics.csv", "profile_comparison.csv"]
    _, decay = read_csv(paths[0])
    assert list(decay) == ["t", "scaled_L2", "scaled_Linf"]
    times = np.array(decay["t"], dtype=float)
    assert np.all(times > 0.0)
    assert times[-1] == pytest.approx(2.0)
    meta, prof = read_csv(paths[1])
    assert list(prof) == ["x", "u_sim", "u_profile"]
    assert len(prof["x"]) == 250
    assert float(meta["nu"]) == pytest.approx(0.03, abs=1e-15)


def test_verify_passes_on_defaults(tmp_path):
    (path,) = run_experiment(parse_config("experiment = verify\n"), out_dir=str(tmp_path))
    assert path.name == "verify.csv"
    _, cols = read_csv(path)
    assert cols["check"]  # all eight invariants are listed
    assert all(float(v) == 1.0 for v in cols["passed"])
    for observed, bound in zip(cols["observed"], cols["bound"]):
        assert float(observed) <= float(bound)


def test_verify_failure_raises_after_writing_report(tmp_path):
    # an extreme c_nu breaks the cross-solver agreement bound; the report
    # must still be written so the numbers can be inspected
    text = "experiment = verify\nparams.c_nu = 0.9\n"
    with pytest.raises(VerificationError, match="checks failed"):
        run_experiment(parse_config(text), out_dir=str(tmp_path))
    assert (tmp_path / "verify.csv").exists()


def test_run_experiment_rejects_bad_thread_count(tmp_path):
    with pytest.raises(ConfigError, match="threads"):
        run_experiment(parse_config(MINIMAL_SIMULATE), out_dir=str(tmp_path), threads=0)


# ---------------------------------------------------------------------------
# entry point and exit codes


def write_config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_main_success_prints_emitted_paths(tmp_path, capsys):
    text = "experiment = simulate\nT = 0.5\ndt = 0.1\n" + small_grid_lines()
    code = main(["simulate", "--config", write_config(tmp_path, text), "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert str(tmp_path / "trajectory.csv") in out


def test_main_config_error_is_exit_2(tmp_path, capsys):
    code = main(["simulate", "--config", write_config(tmp_path, "experiment = warp\n")])
    assert code == 2
    assert "config error" in capsys.readouterr().err


def test_main_experiment_mismatch_is_exit_2(tmp_path, capsys):
    path = write_config(tmp_path, MINIMAL_SIMULATE)
    code = main(["converge", "--config", path])
    assert code == 2
    err = capsys.readouterr().err
    assert "config sets experiment 'simulate'" in err


def test_main_solver_abort_is_exit_3(tmp_path, capsys):
    # dt far above the explicit stability bound parses fine (the bound
    # depends on the data) but aborts at the first step
    text = "experiment = simulate\nT = 1\ndt = 0.5\ninitial.amplitude = 2\n"
    code = main(["simulate", "--config", write_config(tmp_path, text), "--out", str(tmp_path)])
    assert code == 3
    assert "solver abort" in capsys.readouterr().err


def test_main_missing_config_file_is_exit_4(tmp_path, capsys):
    code = main(["simulate", "--config", str(tmp_path / "nope.cfg")])
    assert code == 4
    assert "i/o error" in capsys.readouterr().err


def test_main_non_utf8_config_is_exit_2(tmp_path, capsys):
    path = tmp_path / "bin.cfg"
    path.write_bytes(b"\xff\xfe\x00bogus")
    code = main(["simulate", "--config", str(path)])
    assert code == 2
    assert "not valid UTF-8" in capsys.readouterr().err


def test_main_out_flag_overrides_config_out_dir(tmp_path, capsys):
    inside = tmp_path / "from_config"
    override = tmp_path / "from_flag"
    text = (
        "experiment = simulate\nT = 0\ndt = 0.1\n"
        + small_grid_lines()
        + f"out_dir = {inside}\n"
    )
    code = main(["simulate", "--config", write_config(tmp_path, text), "--out", str(override)])
    assert code == 0
    assert (override / "trajectory.csv").exists()
    assert not inside.exists()
