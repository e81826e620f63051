import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sdepth.errors import DataIOError, DimensionMismatch, EmptyDataset, ParseError, RaggedRows, ValidationError
from sdepth.io import parse_rows, read_dataset, read_matrix, resolve_mu, resolve_sigma, write_dataset


def test_parse_examples():
    assert parse_rows("1,2\n3,4\n").tolist() == [[1, 2], [3, 4]]
    assert parse_rows("# comment\n1 2\n").tolist() == [[1, 2]]
    with pytest.raises(RaggedRows) as ei:
        parse_rows("1,2\n3\n")
    assert ei.value.line == 2


def test_parse_header_and_mixed_delimiters():
    got = parse_rows("x, y\n1.5,\t-2e-3\n  3   4\n\n")
    assert got.tolist() == [[1.5, -0.002], [3.0, 4.0]]


def test_parse_errors():
    with pytest.raises(EmptyDataset):
        parse_rows("# nothing\n\n")
    with pytest.raises(EmptyDataset):
        parse_rows("a,b\n")
    with pytest.raises(ParseError) as ei:
        parse_rows("1,2\n3,abc\n")
    assert ei.value.line == 2


def test_read_missing_file(tmp_path):
    with pytest.raises(DataIOError):
        read_dataset(tmp_path / "missing.csv")


def test_read_matrix(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("2 1\n1 2\n")
    assert read_matrix(p).tolist() == [[2, 1], [1, 2]]
    p.write_text("1 2 3\n4 5 6\n")
    with pytest.raises(DimensionMismatch):
        read_matrix(p)


def test_resolve_specs(tmp_path):
    x = np.array([[1.0, 2.0], [3.0, 6.0]])
    assert resolve_mu(None, x).tolist() == [0, 0]
    assert resolve_mu("mean", x).tolist() == [2, 4]
    assert resolve_mu("1,-1", x).tolist() == [1, -1]
    assert np.array_equal(resolve_sigma("identity", x), np.eye(2))
    assert resolve_sigma("2,1;1,2", x).tolist() == [[2, 1], [1, 2]]
    p = tmp_path / "eye.txt"
    p.write_text("1 0\n0 1\n")
    assert np.array_equal(resolve_sigma(str(p), x), resolve_sigma(None, x))
    with pytest.raises(DimensionMismatch):
        resolve_mu("1,2,3", x)
    with pytest.raises(DimensionMismatch):
        resolve_sigma("1,0;0,1,2", x)
    with pytest.raises(ValidationError):
        resolve_sigma("not-a-file", x)


@settings(max_examples=50, deadline=None)
@given(arrays(float, st.tuples(st.integers(1, 8), st.integers(1, 5)),
              elements=st.floats(allow_nan=False, allow_infinity=False, width=64)))
def test_round_trip(tmp_path_factory, x):
    p = tmp_path_factory.mktemp("rt") / "x.csv"
    write_dataset(p, x, header=[f"c{i}" for i in range(x.shape[1])])
    back = read_dataset(p)
    assert back.shape == x.shape
    assert np.array_equal(back, x)
