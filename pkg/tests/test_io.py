import json

import numpy as np
import pytest
from conftest import euclidean_matrix
from hypothesis import given, settings
from hypothesis import strategies as st

from metricshape import NonSymmetricError, validate_metric
from metricshape.io import MatrixParseError, dumps_json, parse_csv, read_matrix, write_csv, write_json


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2 ** 32 - 1))
def test_json_round_trip_is_bit_exact(n, seed):
    X = np.random.default_rng(seed).standard_normal((n, 3)) * 1e3
    space = validate_metric(euclidean_matrix(X), labels=tuple(f"p{i}" for i in range(n)))
    obj = json.loads(dumps_json(space))
    back = np.array(obj["dist"])
    assert np.array_equal(back.view(np.uint64), space.dist.view(np.uint64))
    assert obj["labels"] == list(space.labels)


def test_file_round_trips(tmp_path):
    space = validate_metric(euclidean_matrix(np.random.default_rng(3).random((5, 2))))
    write_json(space, tmp_path / "m.json")
    write_csv(space, tmp_path / "m.csv")
    for name in ("m.json", "m.csv"):
        back = read_matrix(tmp_path / name)
        assert np.array_equal(back.dist, space.dist)
        assert back.provenance["source"] == "loaded"


def test_csv_errors_carry_line_and_column():
    with pytest.raises(MatrixParseError) as err:
        parse_csv("0,1\n1,x\n")
    assert (err.value.line, err.value.column) == (2, 2)
    with pytest.raises(MatrixParseError) as err:
        parse_csv("0,1\n1,0,2\n")
    assert err.value.line == 2
    with pytest.raises(MatrixParseError):
        parse_csv("0,1\n")


def test_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "dist": [[0, 1]]}')
    with pytest.raises(MatrixParseError):
        read_matrix(bad)
    bad.write_text('{"n": 2,\n "dist": [[0, 1], [1, 0]')
    with pytest.raises(MatrixParseError) as err:
        read_matrix(bad)
    assert err.value.line == 2


def test_loaded_matrix_is_validated(tmp_path):
    path = tmp_path / "asym.csv"
    path.write_text("0,1\n2,0\n")
    with pytest.raises(NonSymmetricError):
        read_matrix(path)
