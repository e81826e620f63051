"""Exact scatter halfspace depth in the plane.

Every outside point ``y`` (``|y| > 1``) touches the unit circle tangentially
at two directions; together with their antipodes these are the only
directions at which a point can change slab membership. Folding angles into
``[0, pi)`` and scoring the midpoint of each arc between consecutive
boundary angles gives the depth. Counts are carried from one midpoint to the
next by re-classifying only the points whose boundary angle was crossed.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch
from .sample import DepthResult, StandardizedSample, as_data

ANGLE_MERGE_TOL = 1e-12


def _boundary_events(sample: StandardizedSample) -> tuple[np.ndarray, np.ndarray]:
    """Folded contact angles and owning point (row of ``sample.y``), sorted by angle."""
    yo = sample.y[sample.outside_idx]
    if yo.shape[0] == 0:
        return np.empty(0), np.empty(0, dtype=np.int64)
    r = np.hypot(yo[:, 0], yo[:, 1])
    phi = np.arctan2(yo[:, 1], yo[:, 0])
    half = np.arccos(np.clip(1.0 / r, -1.0, 1.0))
    ang = np.mod(np.concatenate([phi + half, phi - half]), np.pi)
    # mod can return exactly pi for tiny negative inputs
    ang[ang >= np.pi] = 0.0
    owner = np.concatenate([sample.outside_idx, sample.outside_idx])
    order = np.argsort(ang, kind="stable")
    return ang[order], owner[order]


def _group_starts(ang: np.ndarray) -> np.ndarray:
    """Start offsets of runs of angles closer than the merge tolerance."""
    if ang.size == 0:
        return np.empty(0, dtype=np.int64)
    new = np.ones(ang.size, dtype=bool)
    new[1:] = np.diff(ang) > ANGLE_MERGE_TOL
    starts = np.flatnonzero(new)
    # the run touching pi continues the run at 0
    if starts.size > 1 and ang[0] + np.pi - ang[-1] <= ANGLE_MERGE_TOL:
        starts = starts[1:]
    return starts


def circle_angles_2d(sample: StandardizedSample) -> np.ndarray:
    """Sorted, deduplicated contact angles of all (anti-)circles, folded into ``[0, pi)``."""
    if sample.d != 2:
        raise DimensionMismatch("circle_angles_2d needs d = 2")
    ang, _ = _boundary_events(sample)
    if ang.size == 0:
        return ang
    starts = _group_starts(ang)
    out = ang[starts]
    return np.sort(out)


def _status(y: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """-1 strictly inside, +1 strictly outside, 0 on the slab boundary."""
    t = np.abs(y[:, 0] * np.cos(theta) + y[:, 1] * np.sin(theta))
    return np.sign(t - 1.0).astype(np.int64)


def exact_depth_2d(x, mu, sigma) -> DepthResult:
    """Exact depth of ``sigma`` centered at ``mu`` for bivariate data ``x``."""
    xa = as_data(x)
    if xa.shape[1] != 2:
        raise DimensionMismatch(f"exact_depth_2d needs d = 2, got {xa.shape[1]}")
    sample = StandardizedSample.from_data(xa, mu, sigma)
    return _depth_from_sample(sample)


def _depth_from_sample(sample: StandardizedSample) -> DepthResult:
    n = sample.n
    if sample.m <= 1:
        return DepthResult(0, n, None, 0, "exact2d")

    ang, owner = _boundary_events(sample)
    starts = _group_starts(ang)
    k = starts.size
    lead = ang[starts]
    if k == 1:
        mids = np.array([lead[0] / 2.0, (lead[0] + np.pi) / 2.0])
        y = sample.y[sample.outside_idx]
        st = np.stack([_status(y, mids[0]), _status(y, mids[1])])
        p_in = sample.inside_count + np.count_nonzero(st < 0, axis=1)
        p_out = np.count_nonzero(st > 0, axis=1)
    else:
        # midpoint j sits between boundary angle j and j+1 (cyclically, modulo pi)
        nxt = np.roll(lead, -1)
        nxt[-1] += np.pi
        mids = 0.5 * (lead + nxt)

        st0 = _status(sample.y[sample.outside_idx], mids[0:1])
        p_in0 = sample.inside_count + int(np.count_nonzero(st0 < 0))
        p_out0 = int(np.count_nonzero(st0 > 0))

        # reaching midpoint j (j >= 1) crosses boundary group j
        # rotate events so group 0 comes first (a merged wrap group ends the list)
        shift = starts[0]
        ev_owner = np.roll(owner, -shift)
        ev_group = np.repeat(np.arange(k), np.diff(np.append(starts - shift, ang.size)))
        # events of group 0 are crossed when wrapping back, not on the way forward
        keep = ev_group > 0
        ev_group = ev_group[keep]
        ev_owner = ev_owner[keep]
        pairs = np.unique(np.stack([ev_group, ev_owner]), axis=1)
        g, i = pairs[0], pairs[1]
        pts = sample.y[i]
        before = _status(pts, mids[g - 1])
        after = _status(pts, mids[g])
        d_in = np.bincount(g, weights=(after < 0).astype(float) - (before < 0), minlength=k)
        d_out = np.bincount(g, weights=(after > 0).astype(float) - (before > 0), minlength=k)
        p_in = p_in0 + np.rint(np.cumsum(d_in)).astype(np.int64)
        p_out = p_out0 + np.rint(np.cumsum(d_out)).astype(np.int64)

    score = np.minimum(p_in, p_out)
    folded = np.mod(mids, np.pi)
    order = np.argsort(folded, kind="stable")
    best = order[int(np.argmin(score[order]))]
    theta = folded[best]
    witness = np.array([np.cos(theta), np.sin(theta)])
    return DepthResult(int(score[best]), n, witness, int(mids.size), "exact2d")
