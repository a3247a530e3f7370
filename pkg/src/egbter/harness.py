"""Experiment harness: fit every model to a seed graph, sweep replicates,
macro-average the three fidelity metrics, and emit comparison reports.

Per replicate, a model's output graph is scored by the RMSE of its degree
histogram and CCPD table against the seed's, and by the modularity of the
replicate under a freshly computed Louvain partition. GBTER and EGBTER
share one Louvain fit of the seed inside a report; the seed's own
modularity under that partition is the report's "true" row. All randomness
derives deterministically from the master seed, so identical specs produce
byte-identical reports, replicate by replicate, regardless of worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from .community import LouvainConfig, louvain
from .graph import Graph
from .metrics import (
    CcpdDistribution,
    DegreeDistribution,
    ccpd,
    degree_distribution,
    modularity,
    rmse_ccpd,
    rmse_degree,
)
from .models import MODEL_NAMES, fit_model, generate_from_params
from .rng import derive_seed, rng_stream

#: The four models tabulated head-to-head; "er"/"cl" join when asked for.
DEFAULT_MODELS = ("bter", "gbter", "gbter-cc", "egbter")


@dataclass(frozen=True)
class ExperimentSpec:
    seed_graph: Graph
    models: tuple[str, ...] = DEFAULT_MODELS
    replicate_count: int = 100
    master_seed: int = 0
    louvain_config: LouvainConfig = LouvainConfig()

    def __post_init__(self):
        if not self.models:
            raise ValueError("model list must be non-empty")
        unknown = [m for m in self.models if m not in MODEL_NAMES]
        if unknown:
            raise ValueError(f"unknown models {unknown}; expected {MODEL_NAMES}")
        if self.replicate_count < 1:
            raise ValueError("replicate_count must be >= 1")


@dataclass(frozen=True)
class ModelRow:
    name: str
    replicate_count: int = 0
    seeds: tuple[int, ...] = ()
    rmse_degree_mean: float = math.nan
    rmse_degree_std: float = math.nan
    modularity_mean: float = math.nan
    modularity_std: float = math.nan
    rmse_ccpd_mean: float = math.nan
    rmse_ccpd_std: float = math.nan
    failed: bool = False
    error: str | None = None


@dataclass(frozen=True)
class ComparisonReport:
    node_count: int
    edge_count: int
    master_seed: int
    replicate_count: int
    louvain_seed: int
    true_modularity: float
    rows: tuple[ModelRow, ...]

    def to_dict(self) -> dict:
        def stat(value: float):
            # Failed rows carry NaN; emit null to keep the JSON strict.
            return None if math.isnan(value) else value

        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "master_seed": self.master_seed,
            "replicate_count": self.replicate_count,
            "louvain_seed": self.louvain_seed,
            "true_modularity": self.true_modularity,
            "models": [
                {
                    "name": row.name,
                    "replicate_count": row.replicate_count,
                    "seeds": list(row.seeds),
                    "rmse_degree": {
                        "mean": stat(row.rmse_degree_mean),
                        "std": stat(row.rmse_degree_std),
                    },
                    "modularity": {
                        "mean": stat(row.modularity_mean),
                        "std": stat(row.modularity_std),
                    },
                    "rmse_ccpd": {
                        "mean": stat(row.rmse_ccpd_mean),
                        "std": stat(row.rmse_ccpd_std),
                    },
                    "failed": row.failed,
                    "error": row.error,
                }
                for row in self.rows
            ],
        }

    def to_text(self) -> str:
        """Aligned table: one row per model plus the seed's true modularity."""
        header = ("model", "RMSE{d}", "Q", "RMSE{cc_d}")
        body = [("true", "NA", f"{self.true_modularity:.4f}", "NA")]
        for row in self.rows:
            if row.failed:
                body.append((row.name, "FAILED", "FAILED", "FAILED"))
            else:
                body.append(
                    (
                        row.name,
                        f"{row.rmse_degree_mean:.4f}",
                        f"{row.modularity_mean:.4f}",
                        f"{row.rmse_ccpd_mean:.4f}",
                    )
                )
        widths = [
            max(len(line[col]) for line in [header, *body])
            for col in range(len(header))
        ]
        lines = []
        for line in [header, *body]:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
        return "\n".join(lines) + "\n"

    def row(self, name: str) -> ModelRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


def macro_average(values: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (n-1; 0 when n = 1)."""
    if len(values) == 0:
        raise ValueError("macro_average requires at least one value")
    mean = math.fsum(values) / len(values)
    if len(values) == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return mean, math.sqrt(var)


def replicate_metrics(
    params,
    reference_degrees: DegreeDistribution,
    reference_ccpd: CcpdDistribution,
    generation_seed: int,
    louvain_config: LouvainConfig,
) -> tuple[float, float, float]:
    """Score one replicate: (rmse_degree, modularity, rmse_ccpd).

    Deterministic in its arguments, so a replicate's result is independent
    of how many other replicates run alongside it.
    """
    sim = generate_from_params(params, rng_stream(generation_seed))
    rd = rmse_degree(reference_degrees, degree_distribution(sim))
    rc = rmse_ccpd(reference_ccpd, ccpd(sim))
    q = modularity(sim, louvain(sim, louvain_config))
    return rd, q, rc


def _replicate_task(args):
    return replicate_metrics(*args)


def replicate_seeds(master_seed: int, model_name: str, count: int) -> list[int]:
    return [derive_seed(master_seed, model_name, r) for r in range(count)]


def run_experiment(spec: ExperimentSpec, jobs: int = 1) -> ComparisonReport:
    """Fit each requested model once, then sweep and macro-average replicates.

    A model that fails to fit or generate gets a row marked failed; the run
    continues with the remaining models.
    """
    g = spec.seed_graph
    if g.edge_count == 0:
        raise ValueError("the seed graph must have at least one edge")
    reference_degrees = degree_distribution(g)
    reference_ccpd = ccpd(g)
    seed_partition = louvain(g, spec.louvain_config)
    true_q = modularity(g, seed_partition)

    rows = []
    for name in spec.models:
        try:
            params = fit_model(name, g, seed_partition)
        except Exception as exc:  # fit failure: report and continue
            rows.append(ModelRow(name=name, failed=True, error=str(exc)))
            continue
        seeds = replicate_seeds(spec.master_seed, name, spec.replicate_count)
        tasks = [
            (
                params,
                reference_degrees,
                reference_ccpd,
                seeds[r],
                replace(
                    spec.louvain_config,
                    rng_seed=derive_seed(spec.master_seed, name, r, "louvain"),
                ),
            )
            for r in range(spec.replicate_count)
        ]
        try:
            if jobs > 1:
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    results = list(pool.map(_replicate_task, tasks, chunksize=4))
            else:
                results = [replicate_metrics(*task) for task in tasks]
        except Exception as exc:  # generation/scoring failure
            rows.append(
                ModelRow(name=name, seeds=tuple(seeds), failed=True, error=str(exc))
            )
            continue
        rd_mean, rd_std = macro_average([r[0] for r in results])
        q_mean, q_std = macro_average([r[1] for r in results])
        rc_mean, rc_std = macro_average([r[2] for r in results])
        rows.append(
            ModelRow(
                name=name,
                replicate_count=spec.replicate_count,
                seeds=tuple(seeds),
                rmse_degree_mean=rd_mean,
                rmse_degree_std=rd_std,
                modularity_mean=q_mean,
                modularity_std=q_std,
                rmse_ccpd_mean=rc_mean,
                rmse_ccpd_std=rc_std,
            )
        )
    return ComparisonReport(
        node_count=g.node_count,
        edge_count=g.edge_count,
        master_seed=spec.master_seed,
        replicate_count=spec.replicate_count,
        louvain_seed=spec.louvain_config.rng_seed,
        true_modularity=true_q,
        rows=tuple(rows),
    )


def plot_data_rows(seed: Graph, replicate: Graph) -> list[tuple[str, int, float]]:
    """Long-format rows (series, degree, value) comparing seed and replicate.

    Series are seed-degree / sim-degree (histogram counts) and seed-ccpd /
    sim-ccpd (per-degree clustering), over each distribution's support.
    """
    rows: list[tuple[str, int, float]] = []
    for series, dist in (
        ("seed-degree", degree_distribution(seed)),
        ("sim-degree", degree_distribution(replicate)),
    ):
        for d in sorted(dist.counts):
            rows.append((series, d, float(dist.counts[d])))
    for series, table in (
        ("seed-ccpd", ccpd(seed)),
        ("sim-ccpd", ccpd(replicate)),
    ):
        for d in sorted(table.values):
            rows.append((series, d, float(table.values[d])))
    return rows
