"""Tests for the JSON artifacts and CSV export."""

import json
from fractions import Fraction

import pytest

from core.errors import ParseError
from systems.dnnl import dnnl_module
from systems.realization import build_realization
from systems.serialization import (
    dumps,
    load_system,
    normalization_from_dict,
    normalization_to_dict,
    read_json,
    realization_from_dict,
    realization_to_dict,
    system_from_dict,
    system_to_dict,
    trajectory_from_dict,
    trajectory_to_dict,
    write_csv,
)
from systems.trajectory import TrajectoryWindow


def test_system_round_trip(coupled, tmp_path):
    data = system_to_dict(coupled)
    assert data == {"n": 2, "q": 2, "R": [["s1 - 1", "2"], ["1", "s2 - 1"]]}
    path = tmp_path / "coupled.json"
    path.write_text(dumps(data), encoding="utf-8")
    assert load_system(path).rows == coupled.rows


def test_dumps_is_deterministic(spl1):
    data = system_to_dict(spl1)
    reordered = dict(reversed(list(data.items())))
    assert dumps(data) == dumps(reordered)
    assert dumps(data).endswith("}\n")


def test_bad_entry_is_located():
    text = '{\n  "n": 2,\n  "q": 1,\n  "R": [\n    ["s1 - s4"]\n  ]\n}'
    with pytest.raises(ParseError) as info:
        system_from_dict(json.loads(text), text)
    details = info.value.details
    assert details["line"] == 5
    assert details["row"] == 0 and details["col"] == 0
    assert info.value.exit_code == 2


@pytest.mark.parametrize("data", [
    {"n": 2, "R": [["s1"]]},
    {"n": 0, "q": 1, "R": [["1"]]},
    {"n": 2, "q": 2, "R": [["s1"]]},
])
def test_malformed_systems(data):
    with pytest.raises(ParseError):
        system_from_dict(data)


def test_invalid_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "n": 2,\n  "q": 1\n  "R": []\n}', encoding="utf-8")
    with pytest.raises(ParseError) as info:
        read_json(path)
    assert info.value.details["line"] == 4


def test_normalization_round_trip(nnl):
    norm = dnnl_module(nnl)
    data = normalization_to_dict(norm)
    assert data["T"] == [[1, 0], [2, 1]]
    assert data["d"] == 1
    back = normalization_from_dict(json.loads(dumps(data)))
    assert back.transform == norm.transform
    assert back.transformed.spans_equal(norm.transformed)
    assert [c.polynomial for c in back.certificates] == [c.polynomial for c in norm.certificates]
    assert back.path == norm.path
    assert normalization_to_dict(back) == data


def test_realization_round_trip(spl1):
    real = build_realization(spl1, 1)
    data = realization_to_dict(real)
    assert data["gamma"] == 4
    assert data["C"] == [["1", "0", "0", "0"]]
    back, T, source = realization_from_dict(json.loads(dumps(data)))
    assert T.is_identity()
    assert back.A == real.A
    assert back.X == real.X
    assert source.rows == spl1.rows
    assert realization_to_dict(back, T, source) == data


def test_realization_generator_count_mismatch(spl1):
    data = realization_to_dict(build_realization(spl1, 1))
    data["gamma"] = 3
    with pytest.raises(ParseError):
        realization_from_dict(data)


def test_trajectory_round_trip():
    w = TrajectoryWindow.from_function((0, -1), (1, 1), 2, lambda nu: [Fraction(nu[0], 3), nu[1]])
    data = trajectory_to_dict(w)
    assert data["values"][:4] == ["0", "-1", "0", "0"]
    assert trajectory_from_dict(data) == w


@pytest.mark.parametrize("patch", [
    {"values": ["1/0"]},
    {"values": ["x"]},
    {"dim": 3},
    {"lo": [2, 0]},
])
def test_bad_trajectory(patch):
    data = trajectory_to_dict(TrajectoryWindow.zeros((0, 0), (1, 1), 1))
    data.update(patch)
    with pytest.raises(ParseError):
        trajectory_from_dict(data)


def test_csv_export(tmp_path):
    w = TrajectoryWindow.from_function((0, 0), (1, 0), 1, lambda nu: [Fraction(1, 2) + nu[0]])
    exact, floats = tmp_path / "w.csv", tmp_path / "wf.csv"
    write_csv(w, exact)
    write_csv(w, floats, floats=True)
    assert exact.read_text().splitlines() == ["nu1,nu2,w1", "0,0,1/2", "1,0,3/2"]
    assert floats.read_text().splitlines()[2] == "1,0,1.5"
