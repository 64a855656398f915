"""CSV emission: format contract and bitwise round-trips."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abers.report import StudyReport, emit_csv, read_csv


def test_empty_report_emits_header_only(tmp_path):
    path = emit_csv(StudyReport({"dt": [], "error": []}, {}), tmp_path / "empty.csv")
    lines = path.read_text().splitlines()
    assert lines == ["dt,error"]


def test_single_row_layout(tmp_path):
    path = emit_csv(StudyReport({"a": [1.0], "b": [0.5]}, {}), tmp_path / "one.csv")
    text = path.read_text()
    assert text == "a,b\n1,0.5\n"
    assert text.endswith("\n")


def test_metadata_lines_precede_header(tmp_path):
    report = StudyReport({"t": [0.0]}, {"config": "abc123", "scheme": "split"})
    text = emit_csv(report, tmp_path / "m.csv").read_text()
    lines = text.splitlines()
    assert lines[0] == "# config=abc123"
    assert lines[1] == "# scheme=split"
    assert lines[2] == "t"


def test_seventeen_digit_rendering_round_trips(tmp_path):
    # values chosen to be awkward in decimal
    values = [0.1, 0.1 + 0.2, 1.0 / 3.0, 2.0 ** -52, 6.02e23, -1.7976931348623157e308]
    path = emit_csv(StudyReport({"v": values}, {}), tmp_path / "v.csv")
    parsed = read_csv(path)
    assert parsed.columns["v"] == values


def test_nan_cell_round_trips(tmp_path):
    path = emit_csv(StudyReport({"v": [float("nan"), 1.0]}, {}), tmp_path / "nan.csv")
    got = read_csv(path).columns["v"]
    assert math.isnan(got[0]) and got[1] == 1.0


def test_string_cells_round_trip(tmp_path):
    report = StudyReport(
        {"check": ["mass_conserved", "l2_monotone"], "passed": [1.0, 0.0]}, {"k": "v"}
    )
    parsed = read_csv(emit_csv(report, tmp_path / "s.csv"))
    assert parsed.columns["check"] == ["mass_conserved", "l2_monotone"]
    assert parsed.columns["passed"] == [1.0, 0.0]
    assert parsed.metadata == {"k": "v"}


@given(
    st.lists(
        st.floats(allow_nan=False, allow_infinity=False, width=64),
        min_size=0,
        max_size=40,
    )
)
@settings(max_examples=60, deadline=None)
def test_round_trip_is_bitwise_exact(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("rt") / "r.csv"
    emit_csv(StudyReport({"x": values}, {"n": str(len(values))}), path)
    got = read_csv(path).columns["x"]
    assert len(got) == len(values)
    for a, b in zip(got, values):
        assert a == b and math.copysign(1.0, a) == math.copysign(1.0, b)


def test_unequal_column_lengths_rejected():
    with pytest.raises(ValueError, match="length"):
        StudyReport({"a": [1.0, 2.0], "b": [1.0]}, {})


def test_infinite_cell_rejected():
    with pytest.raises(ValueError, match="finite|inf"):
        StudyReport({"a": [float("inf")]}, {})


def test_comma_in_cell_rejected():
    with pytest.raises(ValueError):
        StudyReport({"a": ["x,y"]}, {})


def test_comma_in_column_name_rejected():
    with pytest.raises(ValueError):
        StudyReport({"a,b": [1.0]}, {})


def test_equals_sign_in_metadata_value_rejected():
    with pytest.raises(ValueError):
        StudyReport({"a": [1.0]}, {"grid": "n=3"})


def test_write_failure_surfaces_path(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("occupied")
    target = blocker / "out.csv"  # parent is a file, not a directory
    with pytest.raises(OSError) as excinfo:
        emit_csv(StudyReport({"a": [1.0]}, {}), target)
    assert "out.csv" in str(excinfo.value)


def test_emit_creates_missing_parent_directories(tmp_path):
    target = tmp_path / "a" / "b" / "out.csv"
    emit_csv(StudyReport({"v": [2.0]}, {}), target)
    assert target.read_text() == "v\n2\n"


def test_row_count_property():
    report = StudyReport({"a": [1.0, 2.0, 3.0], "b": [0.0, 0.0, 0.0]}, {})
    assert report.n_rows == 3
