import numpy as np
import pytest
from conftest import CROSS, DEPTH1, gaussian
from hypothesis import given, settings
from hypothesis import strategies as st

from sdepth.errors import DimensionMismatch
from sdepth.exact2d import circle_angles_2d, exact_depth_2d
from sdepth.oracle import enumerate_all_tangents, grid_lower_scan_2d
from sdepth.sample import StandardizedSample, count_slab_strict

I2 = np.eye(2)
Z2 = np.zeros(2)


def _direct_midpoint_depth(y):
    # score every arc midpoint by counting from scratch
    s = StandardizedSample.from_points(y)
    ang = circle_angles_2d(s)
    if s.m <= 1:
        return 0
    nxt = np.append(ang[1:], ang[0] + np.pi)
    best = s.n
    for t in 0.5 * (ang + nxt):
        c = count_slab_strict(y, [np.cos(t), np.sin(t)])
        best = min(best, c.score)
    return best


def test_slab_counts_examples():
    c = count_slab_strict([[2, 0], [0, 2], [0.5, 0.5]], [1, 0])
    assert (c.p_in, c.p_out) == (2, 1)
    assert tuple(count_slab_strict([[1.0, 0.0]], [1, 0])) == (0, 0)


def test_angles_single_point():
    got = circle_angles_2d(StandardizedSample.from_points([[2.0, 0.0]]))
    assert np.allclose(got, [np.pi / 3, 2 * np.pi / 3])
    got = circle_angles_2d(StandardizedSample.from_points([[0.0, 2.0]]))
    assert np.allclose(got, [np.pi / 6, 5 * np.pi / 6])


def test_angles_empty():
    assert circle_angles_2d(StandardizedSample.from_points([[0.1, 0.2]])).size == 0


def test_angles_reject_3d():
    with pytest.raises(DimensionMismatch):
        circle_angles_2d(StandardizedSample.from_points([[2.0, 0.0, 0.0]]))


def test_all_inside_is_zero():
    x = 0.1 * gaussian(1, 2, 5)
    assert exact_depth_2d(x, Z2, I2).depth == 0


def test_cross_and_depth1():
    assert exact_depth_2d(CROSS, Z2, I2).depth == 0
    r = exact_depth_2d(DEPTH1, Z2, I2)
    assert r.depth == 1
    assert r.depth_normalized == 0.25
    # the reported witness attains the depth
    assert count_slab_strict(DEPTH1, r.witness).score == 1


def test_single_outside_point_is_zero():
    x = np.array([[3.0, 0.0], [0.1, 0.0], [0.0, 0.2]])
    assert exact_depth_2d(x, Z2, I2).depth == 0


def test_reject_wrong_dimension():
    with pytest.raises(DimensionMismatch):
        exact_depth_2d(np.zeros((4, 3)), np.zeros(3), np.eye(3))


@pytest.mark.parametrize("n", [2, 3, 5, 17, 64])
def test_sweep_matches_direct_counting(n):
    for trial in range(40):
        y = 1.3 * gaussian(7, 2, n, trial)
        assert exact_depth_2d(y, Z2, I2).depth == _direct_midpoint_depth(y)


def test_grid_scan_bounds():
    # frozen: a 10^4-angle grid recovers the exact values on both analytic sets
    assert grid_lower_scan_2d(DEPTH1, 10_000) == 1
    assert grid_lower_scan_2d(CROSS, 10_000) == 0
    assert grid_lower_scan_2d(0.1 * gaussian(2, 2, 6), 16) == 0
    for trial in range(20):
        y = gaussian(3, 2, 30, trial)
        assert grid_lower_scan_2d(y, 2000) >= exact_depth_2d(y, Z2, I2).depth


def test_grid_scan_rejects():
    with pytest.raises(DimensionMismatch):
        grid_lower_scan_2d(np.zeros((3, 3)), 100)
    with pytest.raises(ValueError):
        grid_lower_scan_2d(DEPTH1, 2)


FROZEN_2D = [3, 0, 5, 4, 3, 1]


def test_frozen_gaussian_values():
    # values recorded from the 2-D engine and confirmed by the tangent oracle
    got = [exact_depth_2d(gaussian(0, 2, 20, t), Z2, I2).depth for t in range(6)]
    for t, v in enumerate(got):
        assert v == enumerate_all_tangents(gaussian(0, 2, 20, t)).depth
    assert got == FROZEN_2D


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 40), st.integers(0, 2**32 - 1), st.floats(0.2, 5.0))
def test_rotation_and_scale_invariance(n, seed, scale):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 2))
    mu = rng.standard_normal(2) * 0.3
    base = exact_depth_2d(x, mu, I2).depth
    th = rng.uniform(0, 2 * np.pi)
    rot = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    assert exact_depth_2d((x - mu) @ rot.T, Z2, I2).depth == base
    assert exact_depth_2d(scale * x, scale * mu, scale**2 * I2).depth == base
    assert exact_depth_2d(x[::-1], mu, I2).depth == base


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2**32 - 1))
def test_depth_bounded_by_half(n, seed):
    x = np.random.default_rng(seed).standard_normal((n, 2)) * 1.5
    r = exact_depth_2d(x, Z2, I2)
    assert 0 <= r.depth <= n // 2
