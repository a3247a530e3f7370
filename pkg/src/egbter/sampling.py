"""Endpoint samplers shared by the Chung-Lu and block-sampling generators.

Every sampler draws whole pairs; when the two endpoints collide the pair is
redrawn (both endpoints), capped at a fixed number of rounds so degenerate
weight vectors fail loudly instead of spinning.
"""

from __future__ import annotations

import math

import numpy as np

MAX_RESAMPLE_ROUNDS = 1000


class SamplingError(RuntimeError):
    """Distinct endpoints could not be drawn (degenerate weight support)."""


def round_half_up(x: float) -> int:
    """Round to the nearest integer, halves away from zero toward +inf."""
    return int(math.floor(x + 0.5))


def sample_pairs_weighted(
    weights: np.ndarray, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``count`` pairs of distinct indices with P(i) proportional to weights[i]."""
    if count == 0:
        return np.empty((0, 2), dtype=np.int64)
    w = np.asarray(weights, dtype=float)
    total = w.sum()
    if total <= 0:
        raise SamplingError("cannot sample endpoints from an all-zero weight vector")
    p = w / total
    n = w.size
    i = rng.choice(n, size=count, p=p)
    j = rng.choice(n, size=count, p=p)
    bad = i == j
    rounds = 0
    while bad.any():
        rounds += 1
        if rounds > MAX_RESAMPLE_ROUNDS:
            raise SamplingError(
                "no distinct endpoint pair drawable from the weight vector"
            )
        redo = int(bad.sum())
        i[bad] = rng.choice(n, size=redo, p=p)
        j[bad] = rng.choice(n, size=redo, p=p)
        bad = i == j
    return np.column_stack([i, j]).astype(np.int64)


def sample_pairs_uniform(
    population: np.ndarray, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``count`` pairs of distinct ids uniformly from ``population``."""
    if count == 0:
        return np.empty((0, 2), dtype=np.int64)
    pop = np.asarray(population, dtype=np.int64)
    if pop.size < 2:
        raise SamplingError("need at least two candidates to draw a pair")
    i = rng.integers(0, pop.size, size=count)
    j = rng.integers(0, pop.size, size=count)
    bad = i == j
    while bad.any():
        redo = int(bad.sum())
        i[bad] = rng.integers(0, pop.size, size=redo)
        j[bad] = rng.integers(0, pop.size, size=redo)
        bad = i == j
    return np.column_stack([pop[i], pop[j]])
