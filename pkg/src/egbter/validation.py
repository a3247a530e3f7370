"""Input validation helpers shared across models, harness, and CLI."""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .partition import Partition


def check_graph(g) -> Graph:
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    return g


def check_probability(p, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


def check_partition(partition, node_count: int) -> Partition:
    if not isinstance(partition, Partition):
        raise TypeError(f"expected a Partition, got {type(partition).__name__}")
    if partition.node_count != node_count:
        raise ValueError(
            f"partition covers {partition.node_count} nodes, graph has {node_count}"
        )
    return partition


def check_nonnegative_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size and (not np.isfinite(arr).all() or arr.min() < 0):
        raise ValueError(f"{name} must be finite and non-negative")
    return arr


def check_degree_array(values, name: str = "degrees") -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size:
        if not np.array_equal(np.rint(arr), arr):
            raise ValueError(f"{name} must be integers")
        if arr.min() < 0:
            raise ValueError(f"{name} must be non-negative")
    return arr.astype(np.int64)
