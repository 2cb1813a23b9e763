"""Observation graph derived from the echelon form's support pattern.

Two observations are linked when their echelon columns share a nonzero
row; connected components of that graph are the primitive subspaces.
The N x N adjacency A = Yt Y is only materialized (sparsely) on demand,
components come straight from the row supports of Y.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .rref import RrefResult


def indicator(result: RrefResult) -> sparse.csc_matrix:
    """Binary support pattern Y(i,j) = 1 where the echelon entry is nonzero."""
    pattern = result.matrix.copy()
    pattern.data = np.ones_like(pattern.data, dtype=np.int8)
    return sparse.csc_matrix(pattern)


@dataclass
class SubspaceGraph:
    """Support indicator Y plus the implied co-occurrence graph."""

    indicator: sparse.csc_matrix

    @property
    def n_observations(self) -> int:
        return self.indicator.shape[1]

    def adjacency(self) -> sparse.csc_matrix:
        """A = Yt Y in exact integer arithmetic (kept sparse)."""
        y = self.indicator.astype(np.int64)
        return sparse.csc_matrix(y.T @ y)


@dataclass
class ComponentPartition:
    """Partition of observations into connected components.

    Component ids are assigned in order of each component's smallest
    member index, so downstream matrices are reproducible.
    """

    assignment: np.ndarray
    members: list[list[int]]

    @property
    def n_components(self) -> int:
        return len(self.members)

    @property
    def n_observations(self) -> int:
        return len(self.assignment)


class _UnionFind:
    """Array-based union-find with path compression."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def components(graph: SubspaceGraph) -> ComponentPartition:
    """Connected components of the co-occurrence graph.

    All columns sharing a nonzero row of Y are pairwise linked, so one
    union per (row, extra column) pair is enough; the N x N product
    never has to be formed.
    """
    y_rows = graph.indicator.tocsr()
    n = graph.n_observations
    uf = _UnionFind(n)
    indptr, indices = y_rows.indptr, y_rows.indices
    for i in range(y_rows.shape[0]):
        row_cols = indices[indptr[i] : indptr[i + 1]]
        if row_cols.size < 2:
            continue
        anchor = int(row_cols[0])
        for c in row_cols[1:]:
            uf.union(anchor, int(c))
    root_to_id: dict[int, int] = {}
    assignment = np.empty(n, dtype=np.int64)
    members: list[list[int]] = []
    for obs in range(n):
        root = uf.find(obs)
        if root not in root_to_id:
            root_to_id[root] = len(members)
            members.append([])
        cid = root_to_id[root]
        assignment[obs] = cid
        members[cid].append(obs)
    return ComponentPartition(assignment=assignment, members=members)


def size_histogram(partition: ComponentPartition) -> dict[int, int]:
    """Map component size to how many components have that size."""
    return dict(Counter(len(m) for m in partition.members))
