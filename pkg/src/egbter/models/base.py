"""Shared estimator surface for the generative graph models."""

from __future__ import annotations

from sklearn.base import BaseEstimator


class GraphModel(BaseEstimator):
    """fit() learns parameters from a seed graph, generate() draws a replica.

    Subclasses follow scikit-learn conventions: constructor arguments are
    stored verbatim, fitted state lives in trailing-underscore attributes,
    and get_params/set_params/clone work unchanged.
    """

    def fit(self, graph, y=None):
        raise NotImplementedError

    def generate(self, rng):
        """Draw one replica; ``rng`` is an integer seed or numpy Generator."""
        raise NotImplementedError

    def fit_generate(self, graph, rng):
        """Fit on a seed graph and immediately draw one replica."""
        return self.fit(graph).generate(rng)
