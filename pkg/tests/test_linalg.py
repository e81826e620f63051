import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sdepth.errors import DimensionMismatch, InsideBall, NotPositiveDefinite, NotSymmetric, RankDeficient
from sdepth.linalg import (
    OrthoBasis2D,
    orth_complement,
    orth_complement_basis,
    project2d,
    standardize,
    sym_inv_sqrt,
    tangent_directions_2d,
)

SQ3 = np.sqrt(3.0)


def test_inv_sqrt_identity():
    assert np.allclose(sym_inv_sqrt(np.eye(3)), np.eye(3), atol=1e-15)


def test_inv_sqrt_diagonal():
    assert np.allclose(sym_inv_sqrt(np.diag([4.0, 9.0])), np.diag([0.5, 1 / 3]), atol=1e-14)


def test_inv_sqrt_2x2_closed_form():
    s = np.array([[2.0, 1.0], [1.0, 2.0]])
    r = sym_inv_sqrt(s)
    a = (1 + 1 / SQ3) / 2
    b = (1 / SQ3 - 1) / 2
    assert np.allclose(r, [[a, b], [b, a]], atol=1e-12)
    assert np.allclose(r @ s @ r, np.eye(2), atol=1e-12)


def test_inv_sqrt_rejects():
    with pytest.raises(NotSymmetric):
        sym_inv_sqrt([[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(NotPositiveDefinite):
        sym_inv_sqrt([[1.0, 0.0], [0.0, -1.0]])
    with pytest.raises(NotPositiveDefinite):
        sym_inv_sqrt([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(DimensionMismatch):
        sym_inv_sqrt(np.ones((2, 3)))


def test_standardize_examples():
    assert np.allclose(standardize([[3.0, 0.0]], [1.0, 0.0], np.diag([4.0, 4.0])), [[1.0, 0.0]])
    assert np.allclose(standardize([[0.0, 0.0]], [0.0, 0.0], np.eye(2)), [[0.0, 0.0]])
    s = np.array([[2.0, 1.0], [1.0, 2.0]])
    y = standardize([[2.0, 2.0]], [0.0, 0.0], s)[0]
    x = np.array([2.0, 2.0])
    assert abs(y @ y - x @ np.linalg.solve(s, x)) < 1e-10
    assert abs(y @ y - 8 / 3) < 1e-10


def test_standardize_dimension_checks():
    with pytest.raises(DimensionMismatch):
        standardize(np.zeros((3, 2)), np.zeros(3), np.eye(2))
    with pytest.raises(DimensionMismatch):
        standardize(np.zeros((3, 2)), np.zeros(2), np.eye(3))


def _check_basis(basis, gens):
    m = basis.as_matrix()
    assert np.allclose(m @ m.T, np.eye(2), atol=1e-10)
    if len(gens):
        assert np.abs(np.asarray(gens) @ m.T).max() < 1e-10


def test_complement_axis():
    basis = orth_complement_basis([[1.0, 0.0, 0.0]])
    _check_basis(basis, [[1.0, 0.0, 0.0]])


def test_complement_whole_plane():
    basis = orth_complement_basis(np.zeros((0, 2)), dim=2)
    # pivoted completion picks e1 then e2
    assert np.allclose(basis.alpha1, [1.0, 0.0])
    assert np.allclose(basis.alpha2, [0.0, 1.0])


def test_complement_random_4d():
    rng = np.random.default_rng(4)
    g = rng.standard_normal((2, 4))
    _check_basis(orth_complement_basis(g), g)


def test_complement_rank_deficient():
    with pytest.raises(RankDeficient):
        orth_complement_basis([[1.0, 0.0, 0.0, 0.0], [2.0, 0.0, 0.0, 0.0]])
    with pytest.raises(RankDeficient):
        orth_complement(np.eye(3)[:2], 2)


def test_project_examples():
    basis = OrthoBasis2D(np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))
    assert np.allclose(project2d([2.0, 0.0, 0.0], basis), [[2.0, 0.0]])
    assert np.allclose(project2d([0.0, 0.0, 5.0], basis), [[0.0, 0.0]])


def test_tangent_examples():
    v1, v2 = tangent_directions_2d([2.0, 0.0])
    assert np.allclose(v1, [0.5, SQ3 / 2])
    assert np.allclose(v2, [0.5, -SQ3 / 2])
    v1, v2 = tangent_directions_2d([1.0, 0.0])
    assert np.allclose(v1, [1.0, 0.0]) and np.allclose(v2, [1.0, 0.0])
    got = {tuple(np.round(v, 12)) for v in tangent_directions_2d([0.0, -5.0])}
    r6 = 2 * np.sqrt(6) / 5
    assert got == {(round(r6, 12), -0.2), (round(-r6, 12), -0.2)}


def test_tangent_inside_raises():
    with pytest.raises(InsideBall):
        tangent_directions_2d([0.5, 0.5])


finite = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(arrays(float, (2,), elements=finite))
def test_tangent_properties(w):
    if w @ w < 1.0:
        return
    for v in tangent_directions_2d(w):
        assert abs(np.linalg.norm(v) - 1) < 1e-9
        assert abs(v @ w - 1) < 1e-9 * max(1.0, np.linalg.norm(w))


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 6), st.integers(0, 2**32 - 1))
def test_projection_contracts(d, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d - 2, d))
    basis = orth_complement_basis(g)
    _check_basis(basis, g)
    y = rng.standard_normal((5, d))
    w = project2d(y, basis)
    assert np.all(np.linalg.norm(w, axis=1) <= np.linalg.norm(y, axis=1) + 1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_inv_sqrt_defining_identity(d, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((d, d))
    s = a @ a.T + 0.1 * np.eye(d)
    r = sym_inv_sqrt(s)
    assert np.allclose(r, r.T)
    assert np.allclose(r @ s @ r, np.eye(d), atol=1e-8)
