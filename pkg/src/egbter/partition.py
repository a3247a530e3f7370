"""Node partitions into disjoint communities with dense indices."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np


class Partition:
    """Assignment of every node to exactly one community.

    Community indices are dense from 0; communities are disjoint and cover
    all nodes. Use :func:`partition_from_assignment` to normalize arbitrary
    community labels.
    """

    __slots__ = ("_assignment", "_communities")

    def __init__(self, assignment):
        arr = np.asarray(assignment, dtype=np.int64).copy()
        if arr.ndim != 1:
            raise ValueError("assignment must be one-dimensional")
        if arr.size:
            k = int(arr.max()) + 1
            if arr.min() < 0 or not np.array_equal(np.unique(arr), np.arange(k)):
                raise ValueError("community indices must be dense from 0")
        arr.setflags(write=False)
        self._assignment = arr
        self._communities: tuple[np.ndarray, ...] | None = None

    @property
    def assignment(self) -> np.ndarray:
        return self._assignment

    @property
    def node_count(self) -> int:
        return int(self._assignment.size)

    @property
    def num_communities(self) -> int:
        return int(self._assignment.max()) + 1 if self._assignment.size else 0

    @property
    def communities(self) -> tuple[np.ndarray, ...]:
        """Member node ids per community, ascending within each community."""
        if self._communities is None:
            order = np.argsort(self._assignment, kind="stable")
            bounds = np.searchsorted(
                self._assignment[order], np.arange(self.num_communities + 1)
            )
            comms = []
            for k in range(self.num_communities):
                members = np.sort(order[bounds[k] : bounds[k + 1]])
                members.setflags(write=False)
                comms.append(members)
            self._communities = tuple(comms)
        return self._communities

    def community_of(self, v: int) -> int:
        if not 0 <= int(v) < self.node_count:
            raise ValueError(f"node {v} out of range [0, {self.node_count})")
        return int(self._assignment[v])

    def sizes(self) -> np.ndarray:
        return np.bincount(self._assignment, minlength=self.num_communities)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self._assignment, other._assignment)

    def __hash__(self) -> int:
        return hash(self._assignment.tobytes())

    def __reduce__(self):
        return (Partition, (np.asarray(self._assignment),))

    def __repr__(self) -> str:
        return (
            f"Partition(node_count={self.node_count}, "
            f"num_communities={self.num_communities})"
        )


def partition_from_assignment(
    assignment: Mapping[int, int] | Sequence[int],
    node_count: int | None = None,
) -> Partition:
    """Normalize an arbitrary node -> community map into a Partition.

    Community labels are re-indexed densely from 0 in order of first
    appearance by node id. A mapping must cover every node in
    ``range(node_count)`` (inferred from its length when not given).
    """
    if isinstance(assignment, Mapping):
        n = len(assignment) if node_count is None else int(node_count)
        labels = []
        for v in range(n):
            if v not in assignment:
                raise ValueError(f"assignment is missing node {v}")
            labels.append(assignment[v])
        if len(assignment) != n:
            raise ValueError("assignment contains nodes outside the graph")
    else:
        labels = list(assignment)
        if node_count is not None and len(labels) != int(node_count):
            raise ValueError(
                f"assignment covers {len(labels)} nodes, expected {node_count}"
            )
    dense: dict[int, int] = {}
    out = np.empty(len(labels), dtype=np.int64)
    for v, label in enumerate(labels):
        key = int(label)
        if key not in dense:
            dense[key] = len(dense)
        out[v] = dense[key]
    return Partition(out)
