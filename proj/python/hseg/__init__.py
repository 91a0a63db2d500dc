"""Entropy-driven hierarchical image segmentation."""

from ._core import (
    boundary_confidence,
    boundary_map,
    evaluate,
    find_optimization_point,
    histogram_entropy,
    luminance,
    merge_tree_json,
    noise_bound,
    noise_redundancy,
    scale_filter,
    segment,
    similarity_filter,
)

__all__ = [
    "boundary_confidence",
    "boundary_map",
    "evaluate",
    "find_optimization_point",
    "histogram_entropy",
    "luminance",
    "merge_tree_json",
    "noise_bound",
    "noise_redundancy",
    "scale_filter",
    "segment",
    "similarity_filter",
]
