"""Single entry point dispatching to the exact, approximate and reference engines."""

from __future__ import annotations

import numpy as np

from .approx import ApproxConfig, rdirections_from_sample, rpoints_from_sample
from .errors import DimensionMismatch, ValidationError
from .exact2d import _depth_from_sample as _depth2d
from .exactnd import DEFAULT_EPS, depth_from_sample
from .oracle import enumerate_all_tangents
from .sample import DepthResult, StandardizedSample, as_data

METHODS = ("exact", "exact2d", "rdirections", "rpoints", "oracle")


def scatter_depth(x, mu=None, sigma=None, method: str = "exact", *, N: int | None = None,
                  seed: int | None = None, eps: float = DEFAULT_EPS, threads: int = 1,
                  dedupe: bool = True) -> DepthResult:
    """Scatter halfspace depth of ``sigma`` centered at ``mu`` w.r.t. the rows of ``x``.

    ``mu`` defaults to the origin and ``sigma`` to the identity. ``N`` and
    ``seed`` are required for the randomized methods and ignored otherwise.
    """
    if method not in METHODS:
        raise ValidationError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    xa = as_data(x)
    d = xa.shape[1]
    if method in ("rdirections", "rpoints"):
        if N is None or seed is None:
            raise ValidationError(f"method {method} needs both N and seed")
        cfg = ApproxConfig(method, int(N), int(seed), eps, int(threads))
    elif threads < 1:
        raise ValidationError("threads must be >= 1")
    if method != "rdirections" and d < 2:
        raise DimensionMismatch(f"method {method} needs d >= 2")
    if method == "exact2d" and d != 2:
        raise DimensionMismatch(f"exact2d needs d = 2, got {d}")
    mu = np.zeros(d) if mu is None else mu
    sigma = np.eye(d) if sigma is None else sigma
    sample = StandardizedSample.from_data(xa, mu, sigma)

    if method == "exact":
        return depth_from_sample(sample, eps=eps, dedupe=dedupe, threads=threads)
    if method == "exact2d":
        return _depth2d(sample)
    if method == "rdirections":
        return rdirections_from_sample(sample, cfg)
    if method == "rpoints":
        return rpoints_from_sample(sample, cfg)
    rep = enumerate_all_tangents(sample.y, eps=eps)
    return DepthResult(rep.depth, sample.n, None, rep.directions_scored, "oracle",
                       {"per_k": rep.per_k_breakdown})
