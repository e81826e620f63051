"""Standardized samples, slab counts and depth results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .linalg import standardize


class SlabCounts(NamedTuple):
    p_in: int
    p_out: int

    @property
    def score(self) -> int:
        return min(self.p_in, self.p_out)


@dataclass
class DepthResult:
    """Integer depth plus the direction (in standardized coordinates) attaining it."""

    depth: int
    n: int
    witness: np.ndarray | None = None
    evaluations: int = 0
    method: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def depth_normalized(self) -> float:
        return self.depth / self.n if self.n else 0.0

    def __int__(self) -> int:
        return self.depth


@dataclass
class StandardizedSample:
    y: np.ndarray
    outside_idx: np.ndarray
    inside_count: int

    @property
    def d(self) -> int:
        return self.y.shape[1]

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def m(self) -> int:
        return len(self.outside_idx)

    @property
    def y_out(self) -> np.ndarray:
        return np.ascontiguousarray(self.y[self.outside_idx])

    @classmethod
    def from_points(cls, y) -> StandardizedSample:
        ya = np.atleast_2d(np.asarray(y, dtype=float))
        if ya.shape[0] == 0:
            raise ValidationError("empty sample")
        norms2 = np.einsum("ij,ij->i", ya, ya)
        outside = np.flatnonzero(norms2 > 1.0)
        return cls(np.ascontiguousarray(ya), outside, int(ya.shape[0] - outside.size))

    @classmethod
    def from_data(cls, x, mu, sigma) -> StandardizedSample:
        return cls.from_points(standardize(x, mu, sigma))


def as_data(x) -> np.ndarray:
    xa = np.asarray(x, dtype=float)
    if xa.ndim == 1:
        xa = xa[None, :]
    if xa.ndim != 2 or xa.shape[0] == 0:
        raise ValidationError(f"data must be a non-empty n x d array, got shape {xa.shape}")
    return xa


def count_slab_strict(y, v) -> SlabCounts:
    """Numbers of points strictly inside and strictly outside the slab ``|v.y| <= 1``.

    Points with ``|v.y| == 1`` are counted in neither.
    """
    ya = np.atleast_2d(np.asarray(y, dtype=float))
    va = np.asarray(v, dtype=float).ravel()
    if ya.shape[1] != va.shape[0]:
        raise DimensionMismatch("direction and points differ in dimension")
    t = np.abs(ya @ va)
    return SlabCounts(int(np.count_nonzero(t < 1.0)), int(np.count_nonzero(t > 1.0)))
