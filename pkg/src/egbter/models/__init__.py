"""Generative graph models: ER, Chung-Lu, BTER, GBTER, and EGBTER."""

from __future__ import annotations

from ..graph import Graph
from ..partition import Partition
from .base import GraphModel
from .baseline import (
    ChungLuModel,
    ClWeights,
    ErdosRenyiModel,
    ErParams,
    cl_fit,
    cl_generate_exact,
    cl_generate_sampled,
    cl_probability,
    cl_sample_endpoints,
    er_fit,
    er_generate,
)
from .bter import (
    BterGroups,
    BterModel,
    BterParams,
    DegreeGroup,
    bter_build_groups,
    bter_fit,
    bter_generate,
    group_nodes_ascending,
    group_sampling_weight,
)
from .egbter import (
    EgbterModel,
    EgbterParams,
    EgbterPlan,
    egbter_build_plan,
    egbter_fit,
    egbter_generate,
)
from .gbter import (
    GbterModel,
    GbterParams,
    compute_excess,
    gbter_edge_probability,
    gbter_fit,
    gbter_generate,
)

#: Models understood by the harness and CLI; "gbter" learns within-community
#: density, "gbter-cc" within-community clustering.
MODEL_NAMES = ("er", "cl", "bter", "gbter", "gbter-cc", "egbter")


def fit_model(name: str, graph: Graph, partition: Partition | None = None):
    """Fit one named model to a seed graph; community models need a partition."""
    if name == "er":
        return er_fit(graph)
    if name == "cl":
        return cl_fit(graph)
    if name == "bter":
        return bter_fit(graph)
    if name in ("gbter", "gbter-cc"):
        if partition is None:
            raise ValueError(f"model {name!r} requires a community partition")
        return gbter_fit(graph, partition, "cc" if name == "gbter-cc" else "density")
    if name == "egbter":
        if partition is None:
            raise ValueError("model 'egbter' requires a community partition")
        return egbter_fit(graph, partition)
    raise ValueError(f"unknown model {name!r}; expected one of {MODEL_NAMES}")


def generate_from_params(params, rng) -> Graph:
    """Draw one replica from fitted parameters, dispatching on their type."""
    if isinstance(params, ErParams):
        return er_generate(params.node_count, params.p, rng)
    if isinstance(params, ClWeights):
        return cl_generate_exact(params, rng)
    if isinstance(params, BterParams):
        return bter_generate(params, rng)
    if isinstance(params, GbterParams):
        return gbter_generate(params, rng)
    if isinstance(params, EgbterParams):
        return egbter_generate(params, rng)
    raise TypeError(f"unknown params type {type(params).__name__}")


__all__ = [
    "MODEL_NAMES",
    "GraphModel",
    "ErParams",
    "ClWeights",
    "BterParams",
    "BterGroups",
    "DegreeGroup",
    "GbterParams",
    "EgbterParams",
    "EgbterPlan",
    "ErdosRenyiModel",
    "ChungLuModel",
    "BterModel",
    "GbterModel",
    "EgbterModel",
    "er_fit",
    "er_generate",
    "cl_fit",
    "cl_probability",
    "cl_generate_exact",
    "cl_generate_sampled",
    "cl_sample_endpoints",
    "bter_fit",
    "bter_build_groups",
    "bter_generate",
    "group_nodes_ascending",
    "group_sampling_weight",
    "gbter_fit",
    "gbter_edge_probability",
    "gbter_generate",
    "compute_excess",
    "egbter_fit",
    "egbter_build_plan",
    "egbter_generate",
    "fit_model",
    "generate_from_params",
]
