"""Random graph models that jointly target degree distribution, clustering
coefficients, and community structure.

The package provides five generators (Erdos-Renyi, Chung-Lu, BTER, GBTER in
density- or clustering-fitted form, and EGBTER) behind a common fit/generate
estimator API, the metrics used to judge them (degree/CCPD histogram RMSE
and modularity under Louvain partitions), graph I/O for edge-list and
Matrix Market corpora, and a replicate-sweeping comparison harness. See the
``egbter`` command-line tool for batch runs.
"""

from . import graph_io
from .community import LouvainConfig, louvain
from .graph import Graph, GraphConstructionError, NodeId, build_graph
from .harness import (
    DEFAULT_MODELS,
    ComparisonReport,
    ExperimentSpec,
    ModelRow,
    macro_average,
    plot_data_rows,
    run_experiment,
)
from .metrics import (
    CcpdDistribution,
    DegreeDistribution,
    ccpd,
    degree_distribution,
    density,
    local_cc,
    local_cc_all,
    modularity,
    rmse_ccpd,
    rmse_degree,
)
from .models import (
    MODEL_NAMES,
    BterGroups,
    BterModel,
    BterParams,
    ChungLuModel,
    ClWeights,
    DegreeGroup,
    EgbterModel,
    EgbterParams,
    EgbterPlan,
    ErdosRenyiModel,
    ErParams,
    GbterModel,
    GbterParams,
    GraphModel,
    bter_build_groups,
    bter_fit,
    bter_generate,
    cl_fit,
    cl_generate_exact,
    cl_generate_sampled,
    cl_probability,
    cl_sample_endpoints,
    compute_excess,
    egbter_build_plan,
    egbter_fit,
    egbter_generate,
    er_fit,
    er_generate,
    fit_model,
    gbter_edge_probability,
    gbter_fit,
    gbter_generate,
    generate_from_params,
)
from .partition import Partition, partition_from_assignment
from .rng import as_rng, derive_seed, rng_stream
from .sampling import SamplingError
from .synthetic import planted_partition

__version__ = "0.1.0"

__all__ = [
    "graph_io",
    "Graph",
    "GraphConstructionError",
    "NodeId",
    "build_graph",
    "DegreeDistribution",
    "CcpdDistribution",
    "degree_distribution",
    "local_cc",
    "local_cc_all",
    "ccpd",
    "density",
    "rmse_degree",
    "rmse_ccpd",
    "modularity",
    "Partition",
    "partition_from_assignment",
    "LouvainConfig",
    "louvain",
    "rng_stream",
    "derive_seed",
    "as_rng",
    "SamplingError",
    "planted_partition",
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
    "gbter_fit",
    "gbter_edge_probability",
    "gbter_generate",
    "compute_excess",
    "egbter_fit",
    "egbter_build_plan",
    "egbter_generate",
    "fit_model",
    "generate_from_params",
    "ExperimentSpec",
    "ComparisonReport",
    "ModelRow",
    "DEFAULT_MODELS",
    "run_experiment",
    "macro_average",
    "plot_data_rows",
]
