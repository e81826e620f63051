"""Scatter halfspace depth: exact computation in any dimension plus randomized approximations."""

from .api import METHODS, scatter_depth
from .approx import ApproxConfig, approx_depth, approx_rdirections, approx_rpoints, sample_uniform_direction
from .errors import (
    DataIOError,
    DimensionMismatch,
    EmptyDataset,
    InsideBall,
    NotPositiveDefinite,
    NotSymmetric,
    NumericError,
    ParseError,
    RaggedRows,
    RankDeficient,
    SDepthError,
    ValidationError,
)
from .exact2d import circle_angles_2d, exact_depth_2d
from .exactnd import VisitedStore, evaluate_tuple, exact_depth_nd, mark_visited
from .io import read_dataset, read_matrix, write_dataset
from .linalg import orth_complement_basis, project2d, standardize, sym_inv_sqrt, tangent_directions_2d
from .oracle import enumerate_all_tangents, grid_lower_scan_2d
from .sample import DepthResult, SlabCounts, StandardizedSample, count_slab_strict

__version__ = "0.1.0"

__all__ = [
    "METHODS", "scatter_depth",
    "ApproxConfig", "approx_depth", "approx_rdirections", "approx_rpoints", "sample_uniform_direction",
    "DataIOError", "DimensionMismatch", "EmptyDataset", "InsideBall", "NotPositiveDefinite",
    "NotSymmetric", "NumericError", "ParseError", "RaggedRows", "RankDeficient", "SDepthError",
    "ValidationError",
    "circle_angles_2d", "exact_depth_2d",
    "VisitedStore", "evaluate_tuple", "exact_depth_nd", "mark_visited",
    "read_dataset", "read_matrix", "write_dataset",
    "orth_complement_basis", "project2d", "standardize", "sym_inv_sqrt", "tangent_directions_2d",
    "enumerate_all_tangents", "grid_lower_scan_2d",
    "DepthResult", "SlabCounts", "StandardizedSample", "count_slab_strict",
]
