"""Dense linear algebra and unit-sphere geometry primitives.

Vectors are stored as rows throughout. The ``_``-prefixed functions are
numba kernels reused by the depth engines; the public functions validate
their inputs and wrap them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import (
    DimensionMismatch,
    InsideBall,
    NotPositiveDefinite,
    NotSymmetric,
    RankDeficient,
)

# relative threshold under which a Gram-Schmidt residual counts as dependent
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class OrthoBasis2D:
    alpha1: np.ndarray
    alpha2: np.ndarray

    def as_matrix(self) -> np.ndarray:
        return np.vstack([self.alpha1, self.alpha2])


def sym_inv_sqrt(sigma, tol: float = 1e-12) -> np.ndarray:
    """Symmetric inverse square root of a positive definite matrix.

    Computed from the eigendecomposition ``sigma = Q diag(lam) Q^T`` as
    ``Q diag(lam^-1/2) Q^T``.

    Parameters
    ----------
    sigma : array_like, shape (d, d)
    tol : float
        Relative tolerance. Asymmetry above ``tol * max(1, max|sigma|)``
        raises :class:`NotSymmetric`; an eigenvalue at or below
        ``tol * max_eigenvalue`` raises :class:`NotPositiveDefinite`.
    """
    s = np.asarray(sigma, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] < 1:
        raise DimensionMismatch(f"sigma must be a square matrix, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise NotPositiveDefinite("sigma has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(s))))
    if np.max(np.abs(s - s.T)) > tol * scale:
        raise NotSymmetric("sigma is not symmetric")
    s = 0.5 * (s + s.T)
    lam, q = np.linalg.eigh(s)
    top = lam[-1]
    if top <= 0 or lam[0] <= tol * top:
        raise NotPositiveDefinite(f"smallest eigenvalue {lam[0]:.3g} is not positive")
    r = (q * (1.0 / np.sqrt(lam))) @ q.T
    return 0.5 * (r + r.T)


def standardize(x, mu, sigma) -> np.ndarray:
    """Map observations to ``y_i = sigma^{-1/2} (x_i - mu)``, preserving order."""
    xa = np.atleast_2d(np.asarray(x, dtype=float))
    m = np.asarray(mu, dtype=float).ravel()
    d = xa.shape[1]
    if m.shape[0] != d:
        raise DimensionMismatch(f"mu has dimension {m.shape[0]}, data has {d}")
    if np.shape(sigma) != (d, d):
        raise DimensionMismatch(f"sigma has shape {np.shape(sigma)}, expected {(d, d)}")
    r = sym_inv_sqrt(sigma)
    return (xa - m) @ r


@njit(cache=True, nogil=True)
def _orthonormalize(vecs, nvec, out, start):
    """Gram-Schmidt the first ``nvec`` rows of ``vecs`` into ``out[start:]``.

    Rows already in ``out[:start]`` must be orthonormal and are projected
    out as well. Dependent rows are dropped. Returns the new row count.
    """
    d = out.shape[1]
    rank = start
    v = np.empty(d)
    for j in range(nvec):
        nrm0 = 0.0
        for c in range(d):
            v[c] = vecs[j, c]
            nrm0 += v[c] * v[c]
        nrm0 = np.sqrt(nrm0)
        if nrm0 == 0.0:
            continue
        for _ in range(2):
            for r in range(rank):
                dot = 0.0
                for c in range(d):
                    dot += out[r, c] * v[c]
                for c in range(d):
                    v[c] -= dot * out[r, c]
        nrm = 0.0
        for c in range(d):
            nrm += v[c] * v[c]
        nrm = np.sqrt(nrm)
        if nrm <= RANK_RTOL * nrm0:
            continue
        for c in range(d):
            out[rank, c] = v[c] / nrm
        rank += 1
    return rank


@njit(cache=True, nogil=True)
def _complete(basis, rank, count):
    """Append ``count`` orthonormal rows to ``basis[:rank]``.

    Candidates are the standard basis vectors; at each step the one with
    the largest residual is taken (lowest index on ties). Returns the new
    row count.
    """
    d = basis.shape[1]
    v = np.empty(d)
    for _ in range(count):
        best = -1.0
        pick = 0
        for i in range(d):
            res = 1.0
            for r in range(rank):
                res -= basis[r, i] * basis[r, i]
            if res > best + 1e-15:
                best = res
                pick = i
        for c in range(d):
            v[c] = 0.0
        v[pick] = 1.0
        for _ in range(2):
            for r in range(rank):
                dot = 0.0
                for c in range(d):
                    dot += basis[r, c] * v[c]
                for c in range(d):
                    v[c] -= dot * basis[r, c]
        nrm = 0.0
        for c in range(d):
            nrm += v[c] * v[c]
        nrm = np.sqrt(nrm)
        for c in range(d):
            basis[rank, c] = v[c] / nrm
        rank += 1
    return rank


@njit(cache=True, nogil=True)
def _tangents(w0, w1):
    """The two unit vectors v with v.w = 1; ``|w|`` slightly below 1 is clamped."""
    r2 = w0 * w0 + w1 * w1
    r = np.sqrt(r2)
    h = 1.0 - 1.0 / r2
    h = np.sqrt(h) if h > 0.0 else 0.0
    a0 = w0 / r2
    a1 = w1 / r2
    p0 = -w1 / r
    p1 = w0 / r
    return a0 + h * p0, a1 + h * p1, a0 - h * p0, a1 - h * p1


def orth_complement(generators, count: int, dim: int | None = None) -> np.ndarray:
    """``count`` orthonormal rows spanning part of the complement of ``generators``.

    Generators may be linearly dependent; they only need to leave room for
    ``count`` complementary directions.
    """
    g = np.asarray(generators, dtype=float)
    if g.size == 0:
        if dim is None:
            raise DimensionMismatch("dim is required when there are no generators")
        g = np.zeros((0, dim))
    g = np.atleast_2d(g)
    d = g.shape[1] if dim is None else dim
    if g.shape[1] != d:
        raise DimensionMismatch(f"generators have dimension {g.shape[1]}, expected {d}")
    work = np.zeros((d, d))
    rank = _orthonormalize(np.ascontiguousarray(g), g.shape[0], work, 0)
    if rank + count > d:
        raise RankDeficient(f"complement of rank-{rank} span in R^{d} has no {count} directions")
    _complete(work, rank, count)
    return work[rank:rank + count].copy()


def orth_complement_basis(generators, target_codim: int = 2, dim: int | None = None) -> OrthoBasis2D:
    """Orthonormal basis of the 2-D orthogonal complement of ``span(generators)``.

    Raises :class:`RankDeficient` unless the generators span exactly
    ``d - 2`` dimensions.
    """
    if target_codim != 2:
        raise ValueError("only a two-dimensional complement is supported")
    g = np.asarray(generators, dtype=float)
    if g.size == 0:
        if dim is None:
            raise DimensionMismatch("dim is required when there are no generators")
        g = np.zeros((0, dim))
    g = np.atleast_2d(g)
    d = g.shape[1]
    if dim is not None and dim != d:
        raise DimensionMismatch(f"generators have dimension {d}, expected {dim}")
    if d < 2:
        raise DimensionMismatch("need d >= 2")
    work = np.zeros((d, d))
    rank = _orthonormalize(np.ascontiguousarray(g), g.shape[0], work, 0)
    if rank != d - 2:
        raise RankDeficient(f"generators span dimension {rank}, expected {d - 2}")
    _complete(work, rank, 2)
    return OrthoBasis2D(work[d - 2].copy(), work[d - 1].copy())


def project2d(points, basis: OrthoBasis2D) -> np.ndarray:
    """Coordinates ``(y.alpha1, y.alpha2)`` of each point."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    if p.shape[1] != basis.alpha1.shape[0]:
        raise DimensionMismatch(
            f"points have dimension {p.shape[1]}, basis has {basis.alpha1.shape[0]}"
        )
    return p @ basis.as_matrix().T


def tangent_directions_2d(w) -> tuple[np.ndarray, np.ndarray]:
    """Contact directions of the two tangent lines from ``w`` to the unit circle.

    Returns ``(v1, v2)`` with ``|v_j| = 1`` and ``v_j . w = 1``; ``v1`` is
    on the counter-clockwise side of ``w``.
    """
    wa = np.asarray(w, dtype=float).ravel()
    if wa.shape != (2,):
        raise DimensionMismatch("w must be a 2-vector")
    if wa @ wa < 1.0:
        raise InsideBall(f"|w| = {np.linalg.norm(wa):.6g} < 1")
    a0, a1, b0, b1 = _tangents(wa[0], wa[1])
    return np.array([a0, a1]), np.array([b0, b1])
