"""Principal angles between subspaces and the dissimilarity they induce.

For orthonormal bases Qu (P x du) and Qv (P x dv) with du <= dv, the
cosines of the principal angles are the singular values of Qut Qv,
clamped into [0, 1] before arccos. The pairwise dissimilarity

    D = 1 - (1/dv) * sum(cos(theta_i), i = 1..du)

charges the dv - du missing dimensions at maximum dissimilarity, lies
in [0, 1], and is symmetric because the lower-dimensional subspace
always plays the role of U.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import SubspaceBasis
from .errors import AmbientDimensionMismatch, EmptyInput


@dataclass
class PrincipalAngleResult:
    """Nondecreasing angles (radians) and their nonincreasing cosines."""

    angles: np.ndarray
    cosines: np.ndarray


@dataclass
class DissimilarityMatrix:
    """Symmetric n_c x n_c matrix of pairwise subspace dissimilarities."""

    values: np.ndarray

    @property
    def n_subspaces(self) -> int:
        return self.values.shape[0]


def _vectors(basis) -> np.ndarray:
    return basis.vectors if isinstance(basis, SubspaceBasis) else np.asarray(basis)


def principal_angles(q_u, q_v) -> PrincipalAngleResult:
    """Principal angles between the spans of two orthonormal bases.

    Accepts ``SubspaceBasis`` or plain (P x d) arrays; the smaller basis
    is treated as U internally, so the result has min(du, dv) angles.

    Raises:
        AmbientDimensionMismatch: bases live in different ambient spaces.
    """
    u, v = _vectors(q_u), _vectors(q_v)
    if u.shape[0] != v.shape[0]:
        raise AmbientDimensionMismatch(
            f"ambient dimensions differ: {u.shape[0]} vs {v.shape[0]}"
        )
    if u.shape[1] > v.shape[1]:
        u, v = v, u
    cosines = np.linalg.svd(u.T @ v, compute_uv=False)
    cosines = np.clip(cosines, 0.0, 1.0)
    return PrincipalAngleResult(angles=np.arccos(cosines), cosines=cosines)


def dissimilarity(q_u, q_v) -> float:
    """Dimension-penalized dissimilarity between two subspaces, in [0, 1]."""
    u, v = _vectors(q_u), _vectors(q_v)
    result = principal_angles(u, v)
    d_v = max(u.shape[1], v.shape[1])
    return float(1.0 - result.cosines.sum() / d_v)


def dissimilarity_matrix(bases: list[SubspaceBasis]) -> DissimilarityMatrix:
    """All pairwise dissimilarities, zero diagonal, symmetric.

    One Gram product of the stacked bases provides every Qut Qv block;
    pairs of one-dimensional subspaces reduce to absolute inner products
    and pairs involving a line to a column norm, which covers the vast
    majority of component pairs without any per-pair SVD.
    """
    if len(bases) < 2:
        raise EmptyInput("need at least two bases for a dissimilarity matrix")
    ambient = bases[0].ambient_dim
    for b in bases[1:]:
        if b.ambient_dim != ambient:
            raise AmbientDimensionMismatch(
                f"ambient dimensions differ: {ambient} vs {b.ambient_dim}"
            )
    n = len(bases)
    dims = np.array([b.dimension for b in bases])
    offsets = np.concatenate(([0], np.cumsum(dims)))
    stacked = np.hstack([b.vectors for b in bases])
    gram = stacked.T @ stacked

    D = np.zeros((n, n))
    lines = np.flatnonzero(dims == 1)
    planes = np.flatnonzero(dims > 1)

    # line vs line: the only singular value is |<u, v>|
    if lines.size:
        rows = offsets[lines]
        cos_block = np.abs(gram[np.ix_(rows, rows)])
        np.clip(cos_block, 0.0, 1.0, out=cos_block)
        block = 1.0 - cos_block
        np.fill_diagonal(block, 0.0)
        D[np.ix_(lines, lines)] = block

    # line vs higher-dimensional: single singular value = row norm
    if lines.size:
        for j in planes:
            col0 = offsets[j]
            rows = gram[offsets[lines], col0 : col0 + dims[j]]
            norms = np.linalg.norm(rows, axis=1)
            vals = 1.0 - np.clip(norms, 0.0, 1.0) / dims[j]
            D[lines, j] = vals
            D[j, lines] = vals

    # higher vs higher: batch the small SVDs by block shape
    by_shape: dict[tuple[int, int], tuple[list[tuple[int, int]], list[np.ndarray]]] = {}
    for a_pos, i in enumerate(planes):
        rows = slice(offsets[i], offsets[i] + dims[i])
        for j in planes[a_pos + 1 :]:
            cols = slice(offsets[j], offsets[j] + dims[j])
            shape = (int(dims[i]), int(dims[j]))
            pairs, blocks = by_shape.setdefault(shape, ([], []))
            pairs.append((int(i), int(j)))
            blocks.append(gram[rows, cols])
    for (di, dj), (pairs, blocks) in by_shape.items():
        svals = np.linalg.svd(np.stack(blocks), compute_uv=False)
        sums = np.clip(svals, 0.0, 1.0).sum(axis=1)
        vals = 1.0 - sums / max(di, dj)
        for (i, j), v in zip(pairs, vals):
            D[i, j] = v
            D[j, i] = v

    np.clip(D, 0.0, 1.0, out=D)
    np.fill_diagonal(D, 0.0)
    return DissimilarityMatrix(values=D)
