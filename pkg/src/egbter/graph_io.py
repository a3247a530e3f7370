"""Reading and writing graphs, partitions, model parameters, and plot data.

Supported ingest formats are plain whitespace edge lists ("u v" per line,
'#' comments) and Matrix Market coordinate files (pattern or real field,
general or symmetric). Both are read as undirected simple graphs: directed
source data is symmetrized, self-loops are dropped with a counted warning,
and duplicate edges collapse. External node labels are mapped to dense ids
here and nowhere else.
"""

from __future__ import annotations

import json
import warnings
from typing import Iterable

import numpy as np

from .graph import Graph
from .metrics import CcpdDistribution
from .models.baseline import ClWeights, ErParams
from .models.bter import BterParams
from .models.egbter import EgbterParams, EgbterPlan
from .models.gbter import GbterParams, compute_excess
from .partition import Partition


class ParseError(ValueError):
    """Malformed graph file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LabelMap:
    """Bijective map between external string labels and dense node ids."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        self.labels = list(labels)
        self._index = {label: i for i, label in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("labels must be unique")

    @classmethod
    def identity(cls, node_count: int) -> "LabelMap":
        return cls(str(i) for i in range(node_count))

    def index_of(self, label: str) -> int:
        return self._index[label]

    def label_of(self, index: int) -> str:
        return self.labels[index]

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelMap):
            return NotImplemented
        return self.labels == other.labels


def _iter_lines(source) -> Iterable[str]:
    if isinstance(source, str):
        return source.splitlines()
    return source


def _warn_dropped_loops(count: int) -> None:
    if count:
        warnings.warn(f"dropped {count} self-loop(s)", stacklevel=3)


def read_edge_list(source) -> tuple[Graph, LabelMap]:
    """Parse a whitespace edge list; labels map densely in appearance order."""
    index: dict[str, int] = {}
    edges = []
    loops = 0
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(
                f"expected 'u v', got {line!r}", line=lineno
            )
        u, v = tokens
        if u == v:
            loops += 1
            if u not in index:
                index[u] = len(index)
            continue
        for label in (u, v):
            if label not in index:
                index[label] = len(index)
        edges.append((index[u], index[v]))
    _warn_dropped_loops(loops)
    labels = sorted(index, key=index.get)
    return Graph(len(index), edges), LabelMap(labels)


def read_matrix_market(source) -> tuple[Graph, LabelMap]:
    """Parse a Matrix Market coordinate file into an undirected simple graph."""
    lines = iter(enumerate(_iter_lines(source), start=1))
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty Matrix Market input") from None
    tokens = header.strip().lower().split()
    if len(tokens) != 5 or tokens[0] != "%%matrixmarket" or tokens[1] != "matrix":
        raise ParseError("unsupported Matrix Market header", line=lineno)
    _, _, layout, field, symmetry = tokens
    if layout != "coordinate":
        raise ParseError(f"unsupported layout {layout!r}", line=lineno)
    if field not in ("pattern", "real"):
        raise ParseError(f"unsupported field {field!r}", line=lineno)
    if symmetry not in ("general", "symmetric"):
        raise ParseError(f"unsupported symmetry {symmetry!r}", line=lineno)

    size = None
    for lineno, raw in lines:
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("expected 'rows cols nnz'", line=lineno)
        try:
            rows, cols, nnz = (int(x) for x in parts)
        except ValueError:
            raise ParseError("expected 'rows cols nnz'", line=lineno) from None
        size = (rows, cols, nnz)
        break
    if size is None:
        raise ParseError("missing size line")
    rows, cols, nnz = size
    if rows != cols:
        raise ParseError(f"adjacency matrix must be square, got {rows}x{cols}")

    expected_tokens = 2 if field == "pattern" else 3
    edges = []
    loops = 0
    seen = 0
    for lineno, raw in lines:
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) != expected_tokens:
            raise ParseError(
                f"expected {expected_tokens} tokens per entry", line=lineno
            )
        try:
            i, j = int(parts[0]), int(parts[1])
            if field == "real":
                float(parts[2])
        except ValueError:
            raise ParseError(f"malformed entry {line!r}", line=lineno) from None
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(
                f"entry ({i}, {j}) outside declared {rows}x{cols} bounds",
                line=lineno,
            )
        seen += 1
        if i == j:
            loops += 1
            continue
        edges.append((i - 1, j - 1))
    if seen != nnz:
        raise ParseError(f"declared {nnz} entries, found {seen}")
    _warn_dropped_loops(loops)
    return Graph(rows, edges), LabelMap.identity(rows)


def sniff_format(first_line: str) -> str:
    return "mtx" if first_line.lstrip().lower().startswith("%%matrixmarket") else "edgelist"


def load_graph(path, fmt: str = "auto") -> tuple[Graph, LabelMap]:
    """Read a graph file, sniffing the format from its header when ``auto``."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if fmt == "auto":
        first = text.splitlines()[0] if text.splitlines() else ""
        fmt = sniff_format(first)
    if fmt == "mtx":
        return read_matrix_market(text)
    if fmt == "edgelist":
        return read_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def write_edge_list(g: Graph, labels: LabelMap | None = None) -> str:
    """Render edges one per line. Isolated nodes are not representable."""
    labels = labels if labels is not None else LabelMap.identity(g.node_count)
    if len(labels) != g.node_count:
        raise ValueError("label map does not cover the graph")
    lines = [f"{labels.label_of(u)} {labels.label_of(v)}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_partition_text(p: Partition, labels: LabelMap | None = None) -> str:
    labels = labels if labels is not None else LabelMap.identity(p.node_count)
    lines = [
        f"{labels.label_of(v)} {p.assignment[v]}" for v in range(p.node_count)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def partition_to_dict(p: Partition, labels: LabelMap | None = None) -> dict:
    out = {"assignment": [int(k) for k in p.assignment]}
    if labels is not None:
        out["labels"] = list(labels.labels)
    return out


def partition_from_dict(d: dict) -> tuple[Partition, LabelMap | None]:
    part = Partition(np.asarray(d["assignment"], dtype=np.int64))
    labels = LabelMap(d["labels"]) if "labels" in d else None
    return part, labels


def write_partition_json(p: Partition, labels: LabelMap | None = None) -> str:
    return _dump(partition_to_dict(p, labels))


def _ccpd_to_pairs(table: CcpdDistribution) -> list[list]:
    return [[int(d), float(v)] for d, v in sorted(table.values.items())]


def _ccpd_from_pairs(pairs) -> CcpdDistribution:
    return CcpdDistribution({int(d): float(v) for d, v in pairs})


def params_to_dict(params) -> dict:
    """Serialize fitted model parameters with a model tag."""
    if isinstance(params, ErParams):
        return {"model": "er", "node_count": params.node_count, "p": params.p}
    if isinstance(params, ClWeights):
        return {"model": "cl", "weights": [float(w) for w in params.weights]}
    if isinstance(params, BterParams):
        return {
            "model": "bter",
            "expected_degrees": [int(d) for d in params.expected_degrees],
            "ccpd": _ccpd_to_pairs(params.ccpd),
        }
    if isinstance(params, GbterParams):
        return {
            "model": "gbter",
            "fit_mode": params.fit_mode,
            "expected_degrees": [int(d) for d in params.expected_degrees],
            "assignment": [int(k) for k in params.partition.assignment],
            "community_p": [float(p) for p in params.community_p],
        }
    if isinstance(params, EgbterParams):
        return {
            "model": "egbter",
            "assignment": [int(k) for k in params.partition.assignment],
            "within_degree": [int(d) for d in params.within_degree],
            "global_degree": [int(d) for d in params.global_degree],
            "within_ccpd": [_ccpd_to_pairs(t) for t in params.within_ccpd],
        }
    raise TypeError(f"unknown params type {type(params).__name__}")


def params_from_dict(d: dict):
    """Inverse of :func:`params_to_dict`; validates model invariants."""
    try:
        model = d["model"]
    except (KeyError, TypeError):
        raise ValueError("params JSON must carry a 'model' tag") from None
    if model == "er":
        return ErParams(int(d["node_count"]), float(d["p"]))
    if model == "cl":
        return ClWeights(np.asarray(d["weights"], dtype=float))
    if model == "bter":
        return BterParams(
            np.asarray(d["expected_degrees"], dtype=np.int64),
            _ccpd_from_pairs(d["ccpd"]),
        )
    if model == "gbter":
        degrees = np.asarray(d["expected_degrees"], dtype=np.int64)
        partition = Partition(np.asarray(d["assignment"], dtype=np.int64))
        community_p = np.asarray(d["community_p"], dtype=float)
        excess = compute_excess(degrees, partition, community_p)
        return GbterParams(degrees, partition, community_p, excess, d["fit_mode"])
    if model == "egbter":
        return EgbterParams(
            Partition(np.asarray(d["assignment"], dtype=np.int64)),
            np.asarray(d["within_degree"], dtype=np.int64),
            np.asarray(d["global_degree"], dtype=np.int64),
            tuple(_ccpd_from_pairs(t) for t in d["within_ccpd"]),
        )
    raise ValueError(f"unknown model tag {model!r}")


def write_params_json(params, extra: dict | None = None) -> str:
    d = params_to_dict(params)
    if extra:
        d.update(extra)
    return _dump(d)


def read_params_json(text: str):
    return params_from_dict(json.loads(text))


def write_report_json(report) -> str:
    return _dump(report.to_dict())


def egbter_plan_to_dict(plan: EgbterPlan) -> dict:
    """Audit view of a generation plan.

    Fully wired groups (p = 1) have an infinite sampling weight; they are
    exported with weight null and full_wire true. Both the raw excess-degree
    totals and the halved edge-count process weights are included so the
    budgeting is inspectable.
    """
    return {
        "groups": [
            [
                {
                    "members": [int(v) for v in grp.members],
                    "er_probability": grp.er_probability,
                    "sampling_weight": None
                    if not np.isfinite(grp.sampling_weight)
                    else grp.sampling_weight,
                    "full_wire": grp.full_wire,
                }
                for grp in groups
            ]
            for groups in plan.community_groups
        ],
        "within_excess": [float(x) for x in plan.within_excess],
        "global_excess": [float(x) for x in plan.global_excess],
        "excess_degree_totals": {
            "within": float(plan.within_excess.sum()),
            "global": float(plan.global_excess.sum()),
        },
        "process_weights": {
            "er": plan.er_weight,
            "cl_within": plan.cl_within_weight,
            "cl_global": plan.cl_global_weight,
        },
        "sample_budget": plan.sample_budget,
    }


def write_egbter_plan_json(plan: EgbterPlan) -> str:
    return _dump(egbter_plan_to_dict(plan))


def write_plot_csv(rows: Iterable[tuple[str, int, float]]) -> str:
    """CSV with columns (series, degree, value)."""
    lines = ["series,degree,value"]
    for series, degree, value in rows:
        lines.append(f"{series},{degree},{value}")
    return "\n".join(lines) + "\n"
