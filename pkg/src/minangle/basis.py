"""Orthonormal bases for the subspaces spanned by component columns.

The basis comes from an uncentered singular value decomposition of the
component's raw column block. Centering is deliberately skipped: the
subspace model is linear (through the origin), and subtracting a mean
would turn it affine and distort the angle geometry downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import ZeroBlock
from .graph import ComponentPartition


@dataclass
class SubspaceBasis:
    """Column-orthonormal basis Q (P x d) for one component's span."""

    vectors: np.ndarray
    component_id: int = -1

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[0]


def subspace_basis(block, rank_tol: float = 1e-8, component_id: int = -1) -> SubspaceBasis:
    """Orthonormal basis of the span of a component's columns.

    Keeps the left singular vectors whose singular values exceed
    ``rank_tol`` times the largest one; a single column yields d = 1
    with the normalized column itself.

    Raises:
        ZeroBlock: the block has no nonzero entry.
    """
    dense = block.toarray() if sparse.issparse(block) else np.asarray(block, dtype=np.float64)
    if dense.ndim == 1:
        dense = dense[:, None]
    u, s, _ = np.linalg.svd(dense, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        raise ZeroBlock("component block is identically zero")
    d = int(np.sum(s > rank_tol * s[0]))
    return SubspaceBasis(vectors=np.ascontiguousarray(u[:, :d]), component_id=component_id)


def component_bases(
    X, partition: ComponentPartition, rank_tol: float = 1e-8
) -> list[SubspaceBasis]:
    """One basis per component, from the original data columns."""
    csc = sparse.csc_matrix(X) if not sparse.issparse(X) else X.tocsc()
    return [
        subspace_basis(csc[:, members], rank_tol=rank_tol, component_id=cid)
        for cid, members in enumerate(partition.members)
    ]
