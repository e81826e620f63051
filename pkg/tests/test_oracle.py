import numpy as np
import pytest
from conftest import CROSS, DEPTH1, gaussian

from sdepth.errors import DimensionMismatch
from sdepth.oracle import enumerate_all_tangents
from sdepth.sample import count_slab_strict


def test_analytic_sets():
    assert enumerate_all_tangents(CROSS).depth == 0
    assert enumerate_all_tangents(DEPTH1).depth == 1


def test_few_outside_points():
    y = np.array([[3.0, 0.0, 0.0], [0.1, 0.2, 0.0], [0.0, 0.0, 0.3]])
    rep = enumerate_all_tangents(y)
    assert rep.depth == 0
    assert sum(rep.per_k_breakdown.values()) <= 1


def test_no_outside_points():
    rep = enumerate_all_tangents(0.1 * gaussian(0, 3, 6))
    assert rep.depth == 0
    assert rep.per_k_breakdown == {}


def test_breakdown_counts_all_sizes():
    rep = enumerate_all_tangents(gaussian(1, 4, 10) * 1.5)
    assert set(rep.per_k_breakdown) == {1, 2, 3}
    assert rep.directions_scored == 2 * sum(rep.per_k_breakdown.values())


def test_depth_is_attained_by_a_random_scan_upper_bound():
    # the oracle is a minimum over a finite direction set, so random directions never beat it
    rng = np.random.default_rng(0)
    for t in range(5):
        y = gaussian(2, 3, 12, t)
        best = enumerate_all_tangents(y).depth
        u = rng.standard_normal((4000, 3))
        u /= np.linalg.norm(u, axis=1)[:, None]
        scan = min(count_slab_strict(y, v).score for v in u)
        assert best <= scan


def test_rejects_1d():
    with pytest.raises(DimensionMismatch):
        enumerate_all_tangents(np.ones((3, 1)))
