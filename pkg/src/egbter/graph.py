"""Immutable simple undirected graphs over dense integer node ids.

All models in this package index nodes by position, so graphs use dense
0-based ids; arbitrary external labels are translated at the I/O boundary
(see :mod:`egbter.graph_io`), never here.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

NodeId = int

_EDGE_DTYPE = np.int64


class GraphConstructionError(ValueError):
    """Edge input violates the simple-graph contract (bounds or self-loops)."""


class Graph:
    """A simple undirected graph: no self-loops, no multi-edges.

    Duplicate input pairs (including reversed duplicates) collapse to a
    single edge; self-loops and out-of-range endpoints are rejected.
    Instances are immutable after construction and therefore safe to share
    across threads and worker processes; generators accumulate candidate
    edge arrays and construct a Graph once at the end.
    """

    __slots__ = ("_node_count", "_edges", "_adjacency", "_degrees")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        node_count = int(node_count)
        if node_count < 0:
            raise GraphConstructionError("node_count must be non-negative")
        if isinstance(edges, np.ndarray):
            arr = edges.astype(_EDGE_DTYPE, copy=True)
        else:
            arr = np.asarray(list(edges), dtype=_EDGE_DTYPE)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GraphConstructionError("edges must be (u, v) pairs")
        if arr.size:
            if arr.min() < 0 or arr.max() >= node_count:
                raise GraphConstructionError(
                    f"edge endpoint out of range for node_count={node_count}"
                )
            if (arr[:, 0] == arr[:, 1]).any():
                raise GraphConstructionError("self-loops are not allowed")
            arr = np.unique(
                np.column_stack([arr.min(axis=1), arr.max(axis=1)]), axis=0
            )
        arr.setflags(write=False)
        self._node_count = node_count
        self._edges = arr
        self._adjacency: tuple[frozenset[int], ...] | None = None
        self._degrees: np.ndarray | None = None

    # -- basic queries ----------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def edge_count(self) -> int:
        return int(self._edges.shape[0])

    @property
    def edge_array(self) -> np.ndarray:
        """Read-only (m, 2) array of edges with u < v, lexicographically sorted."""
        return self._edges

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self._edges:
            yield int(u), int(v)

    def degrees(self) -> np.ndarray:
        """Read-only array of all node degrees."""
        if self._degrees is None:
            degs = np.bincount(
                self._edges.ravel(), minlength=self._node_count
            ).astype(_EDGE_DTYPE)
            degs.setflags(write=False)
            self._degrees = degs
        return self._degrees

    def degree(self, v: NodeId) -> int:
        self._check_node(v)
        return int(self.degrees()[v])

    def neighbors(self, v: NodeId) -> frozenset[int]:
        self._check_node(v)
        return self._adjacency_sets()[v]

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._adjacency_sets()[u]

    def induced_subgraph(
        self, nodes: Iterable[NodeId]
    ) -> tuple["Graph", dict[int, int]]:
        """Subgraph on ``nodes`` with edges whose endpoints both lie in it.

        Nodes are re-indexed densely in ascending order of their original
        ids; the returned remap table maps original id -> new id.
        """
        keep = np.unique(np.asarray(list(nodes), dtype=_EDGE_DTYPE))
        if keep.size and (keep.min() < 0 or keep.max() >= self._node_count):
            raise ValueError("induced_subgraph: node outside the graph")
        lookup = np.full(self._node_count, -1, dtype=_EDGE_DTYPE)
        lookup[keep] = np.arange(keep.size, dtype=_EDGE_DTYPE)
        if self.edge_count:
            mapped = lookup[self._edges]
            mask = (mapped >= 0).all(axis=1)
            sub_edges = mapped[mask]
        else:
            sub_edges = np.empty((0, 2), dtype=_EDGE_DTYPE)
        remap = {int(old): int(new) for new, old in enumerate(keep)}
        return Graph(keep.size, sub_edges), remap

    # -- plumbing ----------------------------------------------------------

    def _adjacency_sets(self) -> tuple[frozenset[int], ...]:
        if self._adjacency is None:
            sets: list[set[int]] = [set() for _ in range(self._node_count)]
            for u, v in self._edges:
                sets[u].add(int(v))
                sets[v].add(int(u))
            self._adjacency = tuple(frozenset(s) for s in sets)
        return self._adjacency

    def _check_node(self, v: NodeId) -> None:
        if not 0 <= int(v) < self._node_count:
            raise ValueError(f"node {v} out of range [0, {self._node_count})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._node_count == other._node_count and np.array_equal(
            self._edges, other._edges
        )

    def __hash__(self) -> int:
        return hash((self._node_count, self._edges.tobytes()))

    def __reduce__(self):
        # Pickle edges only; adjacency/degree caches rebuild lazily.
        return (Graph, (self._node_count, np.asarray(self._edges)))

    def __repr__(self) -> str:
        return f"Graph(node_count={self._node_count}, edge_count={self.edge_count})"


def build_graph(node_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Construct a simple undirected graph from a node count and edge pairs."""
    return Graph(node_count, edges)
