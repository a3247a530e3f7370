"""Synthetic benchmark seeds."""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .partition import Partition
from .rng import as_rng
from .validation import check_probability


def planted_partition(
    num_blocks: int, block_size: int, p_in: float, p_out: float, rng
) -> tuple[Graph, Partition]:
    """Graph of ``num_blocks`` equal blocks with dense within-block edges.

    Each within-block pair is present with probability ``p_in``, each
    cross-block pair with probability ``p_out``. Returns the graph and the
    planted block partition; a desk-scale stand-in for high-modularity
    networks.
    """
    if num_blocks < 1 or block_size < 1:
        raise ValueError("num_blocks and block_size must be positive")
    check_probability(p_in, "p_in")
    check_probability(p_out, "p_out")
    rng = as_rng(rng)
    n = num_blocks * block_size
    membership = np.arange(n) // block_size
    iu, ju = np.triu_indices(n, 1)
    probs = np.where(membership[iu] == membership[ju], p_in, p_out)
    mask = rng.random(probs.size) < probs
    graph = Graph(n, np.column_stack([iu[mask], ju[mask]]))
    return graph, Partition(membership)
