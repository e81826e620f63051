"""Randomized approximations of the scatter halfspace depth.

``rdirections`` scores uniformly random directions with non-strict counts.
``rpoints`` scores the tangent directions of random signed (d-1)-tuples of
outside points, i.e. a random subset of the exact engine's first loop.

Randomness comes from numpy's PCG64 generator seeded through
``SeedSequence(seed)``. Every draw consumes a fixed number of variates, so
the first N1 draws of a run with N2 > N1 are exactly the draws of a run
with N1. With ``threads > 1`` the seed sequence is split with
``SeedSequence.spawn`` and worker ``w`` takes ``N // threads`` draws (plus
one for the first ``N % threads`` workers); results then differ from the
sequential run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import RankDeficient, ValidationError
from .exactnd import DEFAULT_EPS, FEASIBLE, NORM_DELTA, RANK_DEFICIENT, _score, _tuple_directions
from .sample import DepthResult, StandardizedSample, as_data

METHODS = ("rdirections", "rpoints")


@dataclass(frozen=True)
class ApproxConfig:
    method: str
    N: int
    seed: int = 0
    eps: float = DEFAULT_EPS
    threads: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(f"unknown approximation method {self.method!r}")
        if int(self.N) < 1:
            raise ValidationError("N must be at least 1")
        if int(self.seed) < 0:
            raise ValidationError("seed must be non-negative")


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def sample_uniform_direction(rng: np.random.Generator, d: int) -> np.ndarray:
    """A uniformly distributed unit vector in R^d (normalized Gaussian draw)."""
    if d < 1:
        raise ValidationError("d must be >= 1")
    while True:
        g = rng.standard_normal(d)
        nrm = np.linalg.norm(g)
        if nrm > 0.0:
            return g / nrm


def _uniform_directions(rng: np.random.Generator, count: int, d: int) -> np.ndarray:
    g = rng.standard_normal((count, d))
    nrm = np.linalg.norm(g, axis=1)
    for i in np.flatnonzero(nrm == 0.0):
        g[i] = sample_uniform_direction(rng, d)
        nrm[i] = 1.0
    return g / nrm[:, None]


def _split(N: int, threads: int) -> list[int]:
    q, r = divmod(N, threads)
    return [q + (1 if w < r else 0) for w in range(threads)]


def _streams(cfg: ApproxConfig) -> list[tuple[np.random.Generator, int]]:
    if cfg.threads <= 1:
        return [(make_rng(cfg.seed), cfg.N)]
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.threads)
    return [(np.random.Generator(np.random.PCG64(s)), k)
            for s, k in zip(children, _split(cfg.N, cfg.threads)) if k > 0]


def _rdirections_worker(y: np.ndarray, rng: np.random.Generator, count: int, chunk: int = 4096):
    n, d = y.shape
    best = n + 1
    best_u = None
    done = 0
    while done < count:
        c = min(chunk, count - done)
        u = _uniform_directions(rng, c, d)
        t = np.abs(u @ y.T)
        score = np.minimum(np.count_nonzero(t <= 1.0, axis=1), np.count_nonzero(t >= 1.0, axis=1))
        j = int(np.argmin(score))
        if score[j] < best:
            best = int(score[j])
            best_u = u[j]
        done += c
    return best, best_u


def approx_rdirections(x, mu, sigma, cfg: ApproxConfig) -> DepthResult:
    """Minimum over ``cfg.N`` random directions of min(#{|u.y| <= 1}, #{|u.y| >= 1})."""
    sample = StandardizedSample.from_data(as_data(x), mu, sigma)
    return rdirections_from_sample(sample, cfg)


def rdirections_from_sample(sample: StandardizedSample, cfg: ApproxConfig) -> DepthResult:
    y = sample.y
    streams = _streams(cfg)
    if len(streams) == 1:
        results = [_rdirections_worker(y, *streams[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(streams)) as pool:
            results = list(pool.map(lambda s: _rdirections_worker(y, *s), streams))
    best, best_u = min(results, key=lambda r: r[0])
    return DepthResult(best, sample.n, best_u, cfg.N, "rdirections", {"seed": cfg.seed, "N": cfg.N})


@njit(cache=True, nogil=True)
def _rpoints_kernel(Yout, inside, eps, delta, draws, state, best_u):
    """Score the tuples encoded in ``draws``; ``state`` is [best, evaluations, feasible, status].

    Row layout: d-1 uniforms choosing distinct indices without replacement
    (the t-th picks among the m - t unused ones), then d-2 uniforms for
    the signs of elements 2..d-1.
    """
    m, d = Yout.shape
    k = d - 1
    idx = np.empty(k, np.int64)
    sgn = np.ones(k, np.int64)
    taken = np.empty(k, np.int64)
    Z = np.zeros((d, d))
    work = np.zeros((d, d))
    gens = np.zeros((d, d))
    U = np.zeros((2, d))
    for r in range(draws.shape[0]):
        for t in range(k):
            pos = int(draws[r, t] * (m - t))
            if pos >= m - t:
                pos = m - t - 1
            # taken[:t] is kept sorted; skip over already used indices
            for q in range(t):
                if taken[q] <= pos:
                    pos += 1
            idx[t] = pos
            q = t
            while q > 0 and taken[q - 1] > pos:
                taken[q] = taken[q - 1]
                q -= 1
            taken[q] = pos
        for j in range(1, k):
            sgn[j] = -1 if draws[r, k + j - 1] >= 0.5 else 1
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
        for t in range(2):
            p_in, p_out = _score(Yout, U[t], eps, inside, idx, k)
            state[1] += 1
            s = min(p_in, p_out)
            if s < state[0]:
                state[0] = s
                best_u[:] = U[t]


def _rpoints_worker(sample: StandardizedSample, yout, eps, rng, count, chunk: int = 65536):
    d = sample.d
    state = np.array([sample.n, 0, 0, 0], dtype=np.int64)
    best_u = np.zeros(d)
    width = 2 * d - 3
    done = 0
    while done < count:
        c = min(chunk, count - done)
        draws = rng.random((c, width))
        _rpoints_kernel(yout, sample.inside_count, eps, NORM_DELTA, draws, state, best_u)
        if state[3]:
            break
        done += c
    return state, best_u


def approx_rpoints(x, mu, sigma, cfg: ApproxConfig) -> DepthResult:
    """Minimum strict score over tangent directions of ``cfg.N`` random signed (d-1)-tuples.

    Tuples are drawn independently (with replacement across draws); the
    first element keeps its sign, the others get random signs. Infeasible
    tuples contribute nothing.
    """
    sample = StandardizedSample.from_data(as_data(x), mu, sigma)
    return rpoints_from_sample(sample, cfg)


def rpoints_from_sample(sample: StandardizedSample, cfg: ApproxConfig) -> DepthResult:
    n, d, m = sample.n, sample.d, sample.m
    extra = {"seed": cfg.seed, "N": cfg.N}
    if d < 2:
        raise ValidationError("rpoints needs d >= 2")
    if m <= d - 1:
        return DepthResult(0, n, None, 0, "rpoints", extra)
    yout = sample.y_out
    streams = _streams(cfg)
    if len(streams) == 1:
        results = [_rpoints_worker(sample, yout, cfg.eps, *streams[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(streams)) as pool:
            results = list(pool.map(lambda s: _rpoints_worker(sample, yout, cfg.eps, *s), streams))
    if any(st[3] for st, _ in results):
        raise RankDeficient("tuple spans a degenerate affine hull outside the unit ball; "
                            "data are not in general position")
    best_state, best_u = min(results, key=lambda r: r[0][0])
    evaluations = int(sum(st[1] for st, _ in results))
    witness = best_u.copy() if evaluations else None
    return DepthResult(int(best_state[0]), n, witness, evaluations, "rpoints", extra)


def approx_depth(x, mu, sigma, cfg: ApproxConfig) -> DepthResult:
    if cfg.method == "rdirections":
        return approx_rdirections(x, mu, sigma, cfg)
    return approx_rpoints(x, mu, sigma, cfg)
