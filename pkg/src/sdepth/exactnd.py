"""Exact scatter halfspace depth in any dimension d >= 2.

The depth is the minimum strict slab score over maximal tangent directions
of the unit sphere. Those directions are found by enumerating signed
tuples of outside points (a sign of -1 selects the antipodal point):

* all (d-1)-tuples, scoring both tangent directions of each feasible tuple
  and flagging every smaller sub-collection as visited;
* then, for k = d-2 down to 1, every k-tuple not yet visited, scoring one
  direction in the intersection of its (anti-)circles.

A tuple is feasible when the affine hull of its points stays outside the
open unit ball. Feasibility and the tangent directions are read off a
projection onto the 2-D orthogonal complement of the hull's direction
space (padded with extra orthogonal directions when k < d-1).
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import DimensionMismatch, RankDeficient, ValidationError
from .linalg import (
    _complete,
    _orthonormalize,
    _tangents,
    orth_complement,
    orth_complement_basis,
    project2d,
    tangent_directions_2d,
)
from .sample import DepthResult, SlabCounts, StandardizedSample, as_data

log = logging.getLogger(__name__)

DEFAULT_EPS = 1e-14
# |w| within this of 1 is a general-position violation; such tuples are scored anyway
NORM_DELTA = 1e-12
DUP_RTOL = 1e-12

SKIP = -1
INFEASIBLE = 0
FEASIBLE = 1
RANK_DEFICIENT = 2


class SignedIndex(NamedTuple):
    i: int
    s: int


class TupleBatchResult(NamedTuple):
    feasible: bool
    counts: list
    directions_in_plane: list


# --------------------------------------------------------------------------
# numba kernels


@njit(cache=True, nogil=True)
def _tuple_directions(Z, k, delta, work, gens, U):
    """Tangent directions of the k points in ``Z[:k]`` written to ``U[0]``, ``U[1]``.

    Returns FEASIBLE, INFEASIBLE, SKIP (two points coincide or are
    antipodal) or RANK_DEFICIENT.
    """
    d = Z.shape[1]
    for a in range(k):
        na = 0.0
        for c in range(d):
            na += Z[a, c] * Z[a, c]
        tol = DUP_RTOL * max(np.sqrt(na), 1.0)
        tol *= tol
        for b in range(a + 1, k):
            dm = 0.0
            dp = 0.0
            for c in range(d):
                dm += (Z[a, c] - Z[b, c]) ** 2
                dp += (Z[a, c] + Z[b, c]) ** 2
            if dm <= tol or dp <= tol:
                return SKIP

    ng = 0
    for j in range(1, k):
        for c in range(d):
            gens[ng, c] = Z[j, c] - Z[0, c]
        ng += 1
    if k < d - 1:
        r0 = _orthonormalize(Z, k, work, 0)
        r1 = _complete(work, r0, d - k - 1)
        for t in range(r0, r1):
            for c in range(d):
                gens[ng, c] = work[t, c]
            ng += 1

    rank = _orthonormalize(gens, ng, work, 0)
    if rank != d - 2:
        # distance from the origin to the hull decides whether this is just infeasible
        dist2 = 0.0
        for c in range(d):
            v = Z[0, c]
            for r in range(rank):
                dot = 0.0
                for e in range(d):
                    dot += work[r, e] * Z[0, e]
                v -= dot * work[r, c]
            dist2 += v * v
        if dist2 < (1.0 - delta) ** 2:
            return INFEASIBLE
        return RANK_DEFICIENT

    _complete(work, d - 2, 2)
    w0 = 0.0
    w1 = 0.0
    for c in range(d):
        w0 += Z[0, c] * work[d - 2, c]
        w1 += Z[0, c] * work[d - 1, c]
    if w0 * w0 + w1 * w1 < (1.0 - delta) ** 2:
        return INFEASIBLE
    a0, a1, b0, b1 = _tangents(w0, w1)
    for c in range(d):
        U[0, c] = a0 * work[d - 2, c] + a1 * work[d - 1, c]
        U[1, c] = b0 * work[d - 2, c] + b1 * work[d - 1, c]
    return FEASIBLE


@njit(cache=True, nogil=True)
def _score(Yout, u, eps, inside, members, k):
    d = Yout.shape[1]
    p_in = inside
    p_out = 0
    lo = 1.0 - eps
    hi = 1.0 + eps
    for i in range(Yout.shape[0]):
        t = 0.0
        for c in range(d):
            t += u[c] * Yout[i, c]
        t = abs(t)
        if t < lo:
            p_in += 1
        elif t > hi:
            p_out += 1
    # tuple members lie on the slab boundary by construction
    for j in range(k):
        t = 0.0
        for c in range(d):
            t += u[c] * Yout[members[j], c]
        t = abs(t)
        if t < lo:
            p_in -= 1
        elif t > hi:
            p_out -= 1
    return p_in, p_out


@njit(cache=True, nogil=True)
def _subset_key(idx, sgn, mask, k, m):
    """Integer key of the signed sub-collection selected by ``mask``.

    ``idx`` must be ascending. Signs are normalized so the first selected
    element is a circle; digits are ``code + 1`` in base ``2m + 1``.
    """
    base = 2 * m + 1
    key = 0
    mult = 1
    flip = 0
    for j in range(k):
        if (mask >> j) & 1:
            if flip == 0:
                flip = sgn[j]
            s = sgn[j] * flip
            code = idx[j] + m if s < 0 else idx[j]
            key += (code + 1) * mult
            mult *= base
    return key


@njit(cache=True, nogil=True)
def _mark(visited, idx, sgn, k, max_size, m):
    for mask in range(1, 1 << k):
        bits = 0
        x = mask
        while x:
            bits += x & 1
            x >>= 1
        if bits <= max_size:
            visited.add(_subset_key(idx, sgn, mask, k, m))


@njit(cache=True, nogil=True)
def _next_combo(c, start, k, hi):
    j = k - 1
    while j >= start and c[j] == hi - (k - j):
        j -= 1
    if j < start:
        return False
    c[j] += 1
    for t in range(j + 1, k):
        c[t] = c[t - 1] + 1
    return True


@njit(cache=True, nogil=True)
def _step5(Yout, inside, eps, delta, part, nparts, do_count, do_mark, visited, state, best_u):
    """Loop over (d-1)-tuples whose first index is ``part`` modulo ``nparts``.

    ``state`` holds [best, evaluations, feasible, status].
    """
    m, d = Yout.shape
    k = d - 1
    idx = np.empty(k, np.int64)
    sgn = np.empty(k, np.int64)
    Z = np.zeros((d, d))
    work = np.zeros((d, d))
    gens = np.zeros((d, d))
    U = np.zeros((2, d))
    for i1 in range(part, m, nparts):
        if m - i1 < k:
            break
        for j in range(k):
            idx[j] = i1 + j
        while True:
            for smask in range(1 << (k - 1)):
                sgn[0] = 1
                for j in range(1, k):
                    sgn[j] = -1 if (smask >> (j - 1)) & 1 else 1
                for j in range(k):
                    for c in range(d):
                        Z[j, c] = sgn[j] * Yout[idx[j], c]
                st = _tuple_directions(Z, k, delta, work, gens, U)
                if st == RANK_DEFICIENT:
                    state[3] = RANK_DEFICIENT
                    return
                if st != FEASIBLE:
                    continue
                state[2] += 1
                if do_mark:
                    _mark(visited, idx, sgn, k, d - 2, m)
                if do_count:
                    for t in range(2):
                        p_in, p_out = _score(Yout, U[t], eps, inside, idx, k)
                        state[1] += 1
                        s = min(p_in, p_out)
                        if s < state[0]:
                            state[0] = s
                            best_u[:] = U[t]
                    if state[0] == 0:
                        return
            if not _next_combo(idx, 1, k, m):
                break


@njit(cache=True, nogil=True)
def _step6(Yout, inside, eps, delta, dedupe, visited, state, best_u):
    m, d = Yout.shape
    Z = np.zeros((d, d))
    work = np.zeros((d, d))
    gens = np.zeros((d, d))
    U = np.zeros((2, d))
    for k in range(d - 2, 0, -1):
        if k > m:
            continue
        idx = np.arange(k)
        sgn = np.ones(k, np.int64)
        full = (1 << k) - 1
        while True:
            for smask in range(1 << (k - 1)):
                sgn[0] = 1
                for j in range(1, k):
                    sgn[j] = -1 if (smask >> (j - 1)) & 1 else 1
                if dedupe and _subset_key(idx, sgn, full, k, m) in visited:
                    continue
                for j in range(k):
                    for c in range(d):
                        Z[j, c] = sgn[j] * Yout[idx[j], c]
                st = _tuple_directions(Z, k, delta, work, gens, U)
                if st == RANK_DEFICIENT:
                    state[3] = RANK_DEFICIENT
                    return
                if st != FEASIBLE:
                    continue
                state[2] += 1
                if dedupe:
                    _mark(visited, idx, sgn, k, k, m)
                p_in, p_out = _score(Yout, U[0], eps, inside, idx, k)
                state[1] += 1
                s = min(p_in, p_out)
                if s < state[0]:
                    state[0] = s
                    best_u[:] = U[0]
                if state[0] == 0:
                    return
            if not _next_combo(idx, 0, k, m):
                break


@njit(cache=True, nogil=True)
def _new_store():
    s = {np.int64(-1)}
    s.discard(np.int64(-1))
    return s


@njit(cache=True, nogil=True)
def _run_sequential(Yout, inside, eps, delta, dedupe, count_step5, state, best_u):
    visited = _new_store()
    _step5(Yout, inside, eps, delta, 0, 1, count_step5, dedupe, visited, state, best_u)
    if state[3] != 0 or state[0] == 0:
        return
    _step6(Yout, inside, eps, delta, dedupe, visited, state, best_u)


@njit(cache=True, nogil=True)
def _run_partition(Yout, inside, eps, delta, part, nparts, state, best_u):
    visited = _new_store()
    _step5(Yout, inside, eps, delta, part, nparts, True, False, visited, state, best_u)


# --------------------------------------------------------------------------
# visited store


class VisitedStore:
    """Flags for collections of (anti-)circles of outside points.

    A collection is a set of flattened codes in ``[0, 2m)``: code ``i`` is
    the circle of outside point ``i``, code ``i + m`` its anti-circle. A
    collection and its antipodal image share one canonical key (indices
    ascending, first element a circle). Marking a collection flags every
    non-empty sub-collection with at most ``max_size`` elements.
    """

    def __init__(self, m: int, max_size: int):
        self.m = m
        self.max_size = max_size
        self._keys: set[int] = set()

    def _canonical(self, codes):
        codes = sorted({int(c) for c in codes})
        if not codes:
            raise ValueError("empty collection")
        if any(c < 0 or c >= 2 * self.m for c in codes):
            raise ValueError(f"codes must lie in [0, {2 * self.m})")
        pairs = sorted(((c % self.m, 1 if c < self.m else -1) for c in codes),
                       key=lambda p: (p[0], -p[1]))
        idx = np.array([p[0] for p in pairs], dtype=np.int64)
        sgn = np.array([p[1] for p in pairs], dtype=np.int64)
        return idx, sgn

    def mark(self, codes) -> None:
        idx, sgn = self._canonical(codes)
        k = len(idx)
        for size in range(1, min(k, self.max_size) + 1):
            for pos in combinations(range(k), size):
                mask = sum(1 << p for p in pos)
                self._keys.add(int(_subset_key(idx, sgn, mask, k, self.m)))

    def is_visited(self, codes) -> bool:
        idx, sgn = self._canonical(codes)
        k = len(idx)
        return int(_subset_key(idx, sgn, (1 << k) - 1, k, self.m)) in self._keys

    def __len__(self) -> int:
        return len(self._keys)


def mark_visited(store: VisitedStore, codes) -> VisitedStore:
    store.mark(codes)
    return store


# --------------------------------------------------------------------------
# python-level tuple evaluation


def default_completion(z: np.ndarray, d: int) -> np.ndarray:
    """Orthonormal padding vectors orthogonal to ``span(z)`` for a k-tuple, k < d-1."""
    k = z.shape[0]
    return orth_complement(z, d - k - 1, dim=d)


def evaluate_tuple(sample: StandardizedSample, signed_pts, completion=None, eps: float = DEFAULT_EPS):
    """Score the tangent direction(s) of one signed tuple of outside points.

    ``signed_pts`` holds ``(i, s)`` pairs with ``i`` indexing the outside
    points of ``sample``. For k = d-1 points both tangent directions are
    scored, otherwise only the first. Counts are strict with margin ``eps``
    and taken over the projected sample.
    """
    d = sample.d
    pts = [SignedIndex(int(i), int(s)) for i, s in signed_pts]
    k = len(pts)
    if not 1 <= k <= d - 1:
        raise ValidationError(f"tuple size must be in 1..{d - 1}, got {k}")
    yo = sample.y_out
    z = np.array([p.s * yo[p.i] for p in pts])
    if completion is None:
        completion = default_completion(z, d) if k < d - 1 else np.zeros((0, d))
    completion = np.asarray(completion, dtype=float).reshape(-1, d)
    if completion.shape[0] != d - 1 - k:
        raise DimensionMismatch(f"need {d - 1 - k} completion vectors, got {completion.shape[0]}")
    gens = np.vstack([z[1:] - z[0], completion])
    basis = orth_complement_basis(gens, dim=d)
    w = project2d(z[0], basis)[0]
    if w @ w < 1.0:
        return TupleBatchResult(False, [], [])
    v1, v2 = tangent_directions_2d(w)
    dirs = [v1, v2] if k == d - 1 else [v1]
    proj = project2d(sample.y, basis)
    counts = []
    for v in dirs:
        t = np.abs(proj @ v)
        counts.append(SlabCounts(int(np.count_nonzero(t < 1 - eps)), int(np.count_nonzero(t > 1 + eps))))
    return TupleBatchResult(True, counts, dirs)


# --------------------------------------------------------------------------
# driver


def _key_fits(m: int, d: int) -> bool:
    return d <= 2 or (2 * m + 1) ** (d - 2) < 2**62


def exact_depth_nd(x, mu, sigma, eps: float = DEFAULT_EPS, dedupe: bool = True, threads: int = 1) -> DepthResult:
    """Exact depth of ``sigma`` centered at ``mu`` for data ``x`` in any dimension.

    Parameters
    ----------
    eps : float
        Margin for the strict slab comparisons ``|u.y| < 1 - eps`` and
        ``|u.y| > 1 + eps``.
    dedupe : bool
        Skip collections already covered by a larger feasible collection.
        Pure pruning; the result does not depend on it.
    threads : int
        Worker threads for the (d-1)-tuple loop. 1 (the default) is fully
        sequential and gives reproducible evaluation counts.
    """
    xa = as_data(x)
    if xa.shape[1] < 2:
        raise DimensionMismatch("exact_depth_nd needs d >= 2")
    sample = StandardizedSample.from_data(xa, mu, sigma)
    return depth_from_sample(sample, eps=eps, dedupe=dedupe, threads=threads)


def depth_from_sample(sample: StandardizedSample, eps: float = DEFAULT_EPS, dedupe: bool = True,
                      threads: int = 1) -> DepthResult:
    n, d, m = sample.n, sample.d, sample.m
    if m <= d - 1:
        return DepthResult(0, n, None, 0, "exact", {"m": m})
    if dedupe and not _key_fits(m, d):
        warnings.warn("visited-store keys would overflow; running without pruning", RuntimeWarning)
        dedupe = False

    yout = sample.y_out
    inside = sample.inside_count
    state = np.array([n, 0, 0, 0], dtype=np.int64)
    best_u = np.zeros(d)

    if threads <= 1:
        _run_sequential(yout, inside, eps, NORM_DELTA, dedupe, True, state, best_u)
    else:
        states = [np.array([n, 0, 0, 0], dtype=np.int64) for _ in range(threads)]
        us = [np.zeros(d) for _ in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = [
                pool.submit(_run_partition, yout, inside, eps, NORM_DELTA, p, threads, states[p], us[p])
                for p in range(threads)
            ]
            for f in futs:
                f.result()
        for st, u in zip(states, us):
            state[1] += st[1]
            state[2] += st[2]
            state[3] = max(state[3], st[3])
            if st[0] < state[0]:
                state[0] = st[0]
                best_u[:] = u
        if state[3] == 0 and state[0] > 0 and d > 2:
            # second pass: flag visited collections without re-scoring, then the k < d-1 loop
            feas = state[2]
            _run_sequential(yout, inside, eps, NORM_DELTA, dedupe, False, state, best_u)
            state[2] -= feas

    if state[3] == RANK_DEFICIENT:
        raise RankDeficient("tuple spans a degenerate affine hull outside the unit ball; "
                            "data are not in general position")
    witness = best_u.copy() if state[1] else None
    log.debug("exact_depth_nd: n=%d d=%d m=%d evaluations=%d", n, d, m, state[1])
    return DepthResult(int(state[0]), n, witness, int(state[1]), "exact",
                       {"m": m, "feasible_sets": int(state[2])})
