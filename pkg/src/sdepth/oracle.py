"""Slow reference computations used to cross-check the exact engines.

``enumerate_all_tangents`` scores a direction in the intersection of the
(anti-)circles of *every* signed k-subset of outside points, k = 1..d-1,
with no pruning and no early exit. It solves for the directions in R^d
directly: the unit vectors ``u`` with ``z_j . u = 1`` for all tuple points
form ``u0 + t * null(Z)`` where ``u0`` is the minimum-norm solution, so the
tuple is feasible iff ``|u0| <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .errors import DimensionMismatch

FEAS_TOL = 1e-12
DUP_RTOL = 1e-12


@dataclass
class OracleReport:
    depth: int
    directions_scored: int
    per_k_breakdown: dict = field(default_factory=dict)


def _signed_tuples(m: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    combos = np.array(list(combinations(range(m), k)), dtype=np.int64).reshape(-1, k)
    signs = np.array([(1,) + s for s in product((1, -1), repeat=k - 1)], dtype=float)
    idx = np.repeat(combos, len(signs), axis=0)
    sgn = np.tile(signs, (len(combos), 1))
    return idx, sgn


def _proper(z: np.ndarray) -> np.ndarray:
    """Mask of tuples with no coincident and no antipodal pair."""
    ok = np.ones(z.shape[0], dtype=bool)
    k = z.shape[1]
    norms = np.linalg.norm(z, axis=2)
    for a, b in combinations(range(k), 2):
        tol = DUP_RTOL * np.maximum(norms[:, a], 1.0)
        ok &= np.linalg.norm(z[:, a] - z[:, b], axis=1) > tol
        ok &= np.linalg.norm(z[:, a] + z[:, b], axis=1) > tol
    return ok


def enumerate_all_tangents(y, eps: float = 1e-14, batch: int = 20000) -> OracleReport:
    """Minimum strict slab score over tangent directions of all signed k-subsets."""
    ya = np.atleast_2d(np.asarray(y, dtype=float))
    n, d = ya.shape
    if d < 2:
        raise DimensionMismatch("need d >= 2")
    out = np.flatnonzero(np.linalg.norm(ya, axis=1) > 1.0)
    m = out.size
    best = n
    scored = 0
    per_k = {}
    for k in range(1, min(d - 1, m) + 1):
        idx_all, sgn_all = _signed_tuples(m, k)
        feasible_k = 0
        for lo in range(0, len(idx_all), batch):
            idx = idx_all[lo:lo + batch]
            sgn = sgn_all[lo:lo + batch]
            members = out[idx]
            z = ya[members] * sgn[:, :, None]
            keep = _proper(z)
            z, members = z[keep], members[keep]
            if z.shape[0] == 0:
                continue
            u0 = np.linalg.pinv(z) @ np.ones(k)
            resid = np.abs(np.einsum("tkd,td->tk", z, u0) - 1.0).max(axis=1)
            r2 = np.einsum("td,td->t", u0, u0)
            feas = (resid < 1e-9) & (r2 <= (1.0 + FEAS_TOL) ** 2)
            z, members, u0, r2 = z[feas], members[feas], u0[feas], r2[feas]
            if z.shape[0] == 0:
                continue
            feasible_k += z.shape[0]
            # the last right singular vector always lies in the null space (k < d)
            null = np.linalg.svd(z, full_matrices=True)[2][:, -1, :]
            h = np.sqrt(np.clip(1.0 - r2, 0.0, None))[:, None]
            dirs = np.stack([u0 + h * null, u0 - h * null], axis=1)
            proj = np.abs(dirs @ ya.T)
            rows = np.arange(z.shape[0])[:, None]
            for j in range(2):
                proj[rows, j, members] = 1.0
            p_in = np.count_nonzero(proj < 1.0 - eps, axis=2)
            p_out = np.count_nonzero(proj > 1.0 + eps, axis=2)
            scored += p_in.size
            best = min(best, int(np.minimum(p_in, p_out).min()))
        per_k[k] = feasible_k
    if scored == 0:
        # no circles at all: any direction keeps every point strictly inside
        u = np.zeros(d)
        u[0] = 1.0
        t = np.abs(ya @ u)
        best = min(int(np.count_nonzero(t < 1.0 - eps)), int(np.count_nonzero(t > 1.0 + eps)))
        scored = 1
    return OracleReport(best, scored, per_k)


def grid_lower_scan_2d(y, resolution: int) -> int:
    """Minimum non-strict slab score over ``resolution`` equally spaced angles in [0, pi).

    An upper bound on the depth.
    """
    ya = np.atleast_2d(np.asarray(y, dtype=float))
    if ya.shape[1] != 2:
        raise DimensionMismatch("grid_lower_scan_2d needs d = 2")
    if resolution < 4:
        raise ValueError("resolution must be >= 4")
    best = ya.shape[0]
    chunk = max(1, 2_000_000 // max(ya.shape[0], 1))
    for lo in range(0, resolution, chunk):
        theta = np.arange(lo, min(lo + chunk, resolution)) * (np.pi / resolution)
        t = np.abs(np.outer(np.cos(theta), ya[:, 0]) + np.outer(np.sin(theta), ya[:, 1]))
        score = np.minimum(np.count_nonzero(t <= 1.0, axis=1), np.count_nonzero(t >= 1.0, axis=1))
        best = min(best, int(score.min()))
    return best
