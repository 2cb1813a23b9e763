"""Locally scaled affinities and normalized spectral clustering.

The affinity follows the self-tuning construction: each point gets a
bandwidth equal to its distance to the k-th nearest neighbour, and
W(i,j) = exp(-D(i,j)^2 / (s_i s_j)) with a zero diagonal. Clustering
then runs the normalized-affinity route: unit-normalized rows of the
top-K eigenvector matrix of D^{-1/2} W D^{-1/2}, grouped by k-means.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from scipy import sparse

from .angles import DissimilarityMatrix
from .corpus import TfidfMatrix
from .errors import (
    DegenerateAffinity,
    EmptyInput,
    MissingComponentLabel,
    TooFewPoints,
)
from .graph import ComponentPartition

_KMEANS_MAX_ITER = 300


@dataclass
class AffinityMatrix:
    """Symmetric affinity W with the per-point scales that produced it."""

    weights: np.ndarray
    scales: np.ndarray

    @property
    def n_points(self) -> int:
        return self.weights.shape[0]


def _as_square_array(D) -> np.ndarray:
    values = D.values if isinstance(D, DissimilarityMatrix) else np.asarray(D, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {values.shape}")
    return np.asarray(values, dtype=np.float64)


def local_scaling_affinity(D, k: int = 7) -> AffinityMatrix:
    """Self-tuning Gaussian affinity from a dissimilarity matrix.

    ``s_i`` is the distance from point i to its k-th nearest neighbour
    (self excluded). A zero scale (duplicate points) falls back to the
    smallest positive dissimilarity in the row, or 1.0 if the whole row
    is zero, so W stays total.

    Raises:
        TooFewPoints: fewer than k + 1 points.
    """
    dist = _as_square_array(D)
    n = dist.shape[0]
    if n <= k:
        raise TooFewPoints(f"need more than k={k} points, got {n}")
    if k < 1:
        raise ValueError(f"neighbour index k must be >= 1, got {k}")
    scales = np.empty(n)
    for i in range(n):
        row = np.delete(dist[i], i)
        row.sort()
        s = row[k - 1]
        if s <= 0.0:
            positive = row[row > 0.0]
            s = positive[0] if positive.size else 1.0
        scales[i] = s
    weights = np.exp(-(dist**2) / np.outer(scales, scales))
    weights = 0.5 * (weights + weights.T)
    np.fill_diagonal(weights, 0.0)
    return AffinityMatrix(weights=weights, scales=scales)


def kmeans(
    points: np.ndarray,
    n_clusters: int,
    restarts: int = 20,
    seed: int = 0,
) -> np.ndarray:
    """Best-of-restarts Lloyd k-means with probabilistic farthest seeding.

    Seeding draws each next center with probability proportional to the
    squared distance from the already chosen ones. Empty clusters are
    re-seeded from the points farthest from their centroids. The winner
    is picked by (within-cluster sum of squares, restart index), so the
    result does not depend on evaluation order.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if n == 0:
        raise EmptyInput("cannot cluster zero points")
    if n_clusters < 1:
        raise ValueError(f"n_clusters must be >= 1, got {n_clusters}")
    children = np.random.SeedSequence(seed).spawn(max(restarts, 1))
    best: tuple[float, int, np.ndarray, np.ndarray] | None = None
    for idx, child in enumerate(children):
        rng = np.random.default_rng(child)
        labels, centers, wcss = _kmeans_once(pts, n_clusters, rng)
        if best is None or (wcss, idx) < (best[0], best[1]):
            best = (wcss, idx, labels, centers)
    return best[2]


def _seed_centers(pts: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = pts.shape[0]
    centers = np.empty((k, pts.shape[1]))
    first = int(rng.integers(n))
    centers[0] = pts[first]
    closest = np.sum((pts - centers[0]) ** 2, axis=1)
    for c in range(1, k):
        total = closest.sum()
        if total <= 0.0:
            choice = int(rng.integers(n))  # all points coincide with a center
        else:
            choice = int(rng.choice(n, p=closest / total))
        centers[c] = pts[choice]
        closest = np.minimum(closest, np.sum((pts - centers[c]) ** 2, axis=1))
    return centers


def _kmeans_once(pts, k, rng) -> tuple[np.ndarray, np.ndarray, float]:
    n = pts.shape[0]
    centers = _seed_centers(pts, k, rng)
    labels = np.full(n, -1, dtype=np.int64)
    for _ in range(_KMEANS_MAX_ITER):
        dist2 = _sq_distances(pts, centers)
        new_labels = np.argmin(dist2, axis=1)
        # re-seed empty clusters from the currently worst-fit points
        empty = [c for c in range(k) if not np.any(new_labels == c)]
        if empty and n >= 1:
            worst = np.argsort(dist2[np.arange(n), new_labels])[::-1]
            for c, point in zip(empty, worst):
                centers[c] = pts[point]
            dist2 = _sq_distances(pts, centers)
            new_labels = np.argmin(dist2, axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            mask = labels == c
            if np.any(mask):
                centers[c] = pts[mask].mean(axis=0)
    dist2 = _sq_distances(pts, centers)
    labels = np.argmin(dist2, axis=1)
    wcss = float(dist2[np.arange(n), labels].sum())
    return labels, centers, wcss


def _sq_distances(pts: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = (
        np.sum(pts**2, axis=1)[:, None]
        + np.sum(centers**2, axis=1)[None, :]
        - 2.0 * pts @ centers.T
    )
    return np.maximum(d2, 0.0)


def spectral_cluster(
    W,
    n_clusters: int,
    seed: int = 0,
    restarts: int = 20,
) -> np.ndarray:
    """Normalized spectral clustering into ``n_clusters`` groups.

    Rows of the top-K eigenvector matrix of D^{-1/2} W D^{-1/2} are unit
    normalized and clustered by k-means. Eigenvector signs are fixed by
    making the largest-magnitude entry positive. Points with zero degree
    have an all-zero embedding row and are attached to the nearest
    centroid after the fact.

    Returns labels in ``0..n_clusters-1``.

    Raises:
        TooFewPoints: fewer points than clusters.
        DegenerateAffinity: W is entirely zero, or fewer positive-degree
            points than clusters.
    """
    weights = W.weights if isinstance(W, AffinityMatrix) else np.asarray(W, dtype=np.float64)
    weights = _as_square_array(weights)
    n = weights.shape[0]
    if n_clusters < 1:
        raise ValueError(f"n_clusters must be >= 1, got {n_clusters}")
    if n < n_clusters:
        raise TooFewPoints(f"{n} points cannot form {n_clusters} clusters")
    degrees = weights.sum(axis=1)
    active = np.flatnonzero(degrees > 0.0)
    if active.size == 0:
        raise DegenerateAffinity("affinity matrix is entirely zero")
    if active.size < n_clusters:
        raise DegenerateAffinity(
            f"only {active.size} points have nonzero degree, need {n_clusters}"
        )

    sub = weights[np.ix_(active, active)]
    inv_sqrt = 1.0 / np.sqrt(degrees[active])
    normalized = sub * inv_sqrt[:, None] * inv_sqrt[None, :]
    eigvals, eigvecs = np.linalg.eigh(normalized)
    top = eigvecs[:, -n_clusters:]
    for col in range(top.shape[1]):
        lead = np.argmax(np.abs(top[:, col]))
        if top[lead, col] < 0.0:
            top[:, col] = -top[:, col]
    norms = np.linalg.norm(top, axis=1)
    rows = top / np.where(norms > 0.0, norms, 1.0)[:, None]

    active_labels = kmeans(rows, n_clusters, restarts=restarts, seed=seed)
    labels = np.empty(n, dtype=np.int64)
    labels[active] = active_labels
    if active.size < n:
        # zero-degree points embed at the origin; attach them to the
        # nearest non-empty centroid
        center_norms = np.full(n_clusters, np.inf)
        for c in range(n_clusters):
            mask = active_labels == c
            if np.any(mask):
                center_norms[c] = np.linalg.norm(rows[mask].mean(axis=0))
        isolated = np.setdiff1d(np.arange(n), active, assume_unique=True)
        labels[isolated] = int(np.argmin(center_norms))
    return labels


def propagate(
    partition: ComponentPartition,
    subspace_labels: Union[Mapping[int, int], Sequence[int], np.ndarray],
) -> np.ndarray:
    """Copy each component's cluster label onto its member observations."""
    if isinstance(subspace_labels, Mapping):
        lookup = dict(subspace_labels)
        missing = [c for c in range(partition.n_components) if c not in lookup]
        if missing:
            raise MissingComponentLabel(f"no label for component(s) {missing}")
        table = np.array([lookup[c] for c in range(partition.n_components)])
    else:
        table = np.asarray(subspace_labels)
        if table.shape[0] < partition.n_components:
            raise MissingComponentLabel(
                f"{table.shape[0]} labels for {partition.n_components} components"
            )
    return table[partition.assignment]


def baseline_sc_x(
    X,
    n_clusters: int,
    scaling_k: int = 7,
    seed: int = 0,
    restarts: int = 20,
) -> np.ndarray:
    """Spectral clustering straight on the vectorized observations.

    Euclidean pairwise distances between columns feed the locally scaled
    affinity, skipping the subspace construction entirely.
    """
    matrix = X.matrix if isinstance(X, TfidfMatrix) else X
    csc = sparse.csc_matrix(matrix) if not sparse.issparse(matrix) else matrix.tocsc()
    n = csc.shape[1]
    if n < 2:
        raise TooFewPoints(f"need at least 2 observations, got {n}")
    gram = np.asarray((csc.T @ csc).todense())
    sq = np.diag(gram)
    dist2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * gram, 0.0)
    dist = np.sqrt(dist2)
    affinity = local_scaling_affinity(dist, k=min(scaling_k, n - 1))
    return spectral_cluster(affinity, n_clusters, seed=seed, restarts=restarts)


def baseline_sc_a(
    A,
    n_clusters: int,
    seed: int = 0,
    restarts: int = 20,
) -> np.ndarray:
    """Spectral clustering using the co-occurrence adjacency as affinity."""
    dense = np.asarray(A.todense(), dtype=np.float64) if sparse.issparse(A) else np.array(A, dtype=np.float64)
    np.fill_diagonal(dense, 0.0)
    return spectral_cluster(dense, n_clusters, seed=seed, restarts=restarts)
