"""End-to-end clustering pipeline and its run report.

The main path chains echelon reduction, component discovery, basis
extraction, angle-based dissimilarities, locally scaled spectral
clustering, and label propagation. The two spectral baselines (raw
vectors, co-occurrence adjacency) run through the same entry point via
the ``baseline`` config selector.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import io as mio
from .angles import DissimilarityMatrix, dissimilarity_matrix
from .basis import component_bases
from .corpus import TfidfMatrix, build_vocabulary, tfidf
from .errors import DataError, TooFewPoints
from .graph import ComponentPartition, SubspaceGraph, components, indicator, size_histogram
from .metrics import ari, nmi, purity
from .rref import rref
from .spectral import (
    baseline_sc_a,
    baseline_sc_x,
    local_scaling_affinity,
    propagate,
    spectral_cluster,
)

REPORT_SCHEMA_VERSION = 1

BASELINE_CHOICES = ("none", "sc-x", "sc-a")


@dataclass
class PipelineConfig:
    """Every knob of a clustering run; the report echoes it verbatim."""

    n_clusters: int = 2
    rref_tol: float = 1e-10
    rank_tol: float = 1e-8
    scaling_k: int = 7
    kmeans_restarts: int = 20
    seed: int = 0
    min_df: int = 1
    normalize_columns: bool = True
    lowercase: bool = True
    stop_words: Optional[tuple[str, ...]] = None
    baseline: str = "none"
    input_path: Optional[str] = None
    labels_out: Optional[str] = None
    report_out: Optional[str] = None
    dissimilarity_out: Optional[str] = None

    def validate(self) -> None:
        if self.n_clusters < 1:
            raise DataError(f"n_clusters must be >= 1, got {self.n_clusters}")
        for name in ("rref_tol", "rank_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise DataError(f"{name} must lie in (0, 1), got {value}")
        if self.scaling_k < 1:
            raise DataError(f"scaling_k must be >= 1, got {self.scaling_k}")
        if self.kmeans_restarts < 1:
            raise DataError(f"kmeans_restarts must be >= 1, got {self.kmeans_restarts}")
        if self.min_df < 1:
            raise DataError(f"min_df must be >= 1, got {self.min_df}")
        if self.baseline not in BASELINE_CHOICES:
            raise DataError(f"baseline must be one of {BASELINE_CHOICES}")


@dataclass
class ClusterAssignment:
    """Final labels in 1..K, at subspace and observation level."""

    observation_labels: np.ndarray
    n_clusters: int
    subspace_labels: Optional[np.ndarray] = None


@dataclass
class RunReport:
    """Reproducibility record of one run: sizes, timings, metrics, config."""

    schema_version: int = REPORT_SCHEMA_VERSION
    n_observations: int = 0
    n_features: int = 0
    n_components: int = 0
    histogram: dict[int, int] = field(default_factory=dict)
    stage_seconds: dict[str, float] = field(default_factory=dict)
    dropped_documents: list[str] = field(default_factory=list)
    metrics: Optional[dict[str, float]] = None
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["histogram"] = {str(k): v for k, v in self.histogram.items()}
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        known = {f for f in cls.__dataclass_fields__}
        clean = {k: v for k, v in data.items() if k in known}
        clean["histogram"] = {int(k): v for k, v in data.get("histogram", {}).items()}
        return cls(**clean)


@dataclass
class PipelineArtifacts:
    """Intermediate stage outputs, kept for inspection and tests."""

    graph: Optional[SubspaceGraph] = None
    partition: Optional[ComponentPartition] = None
    dissimilarity: Optional[DissimilarityMatrix] = None


class _StageClock:
    def __init__(self):
        self.seconds: dict[str, float] = {}
        self._t0 = time.perf_counter()

    def lap(self, stage: str) -> None:
        now = time.perf_counter()
        self.seconds[stage] = round(now - self._t0, 6)
        self._t0 = now


def cluster_matrix(X, config: PipelineConfig):
    """Run the configured clustering algorithm on a P x N matrix.

    Returns (ClusterAssignment, RunReport, PipelineArtifacts). The main
    algorithm needs at least as many connected components as clusters;
    otherwise TooFewPoints propagates up.
    """
    config.validate()
    clock = _StageClock()
    artifacts = PipelineArtifacts()
    report = RunReport(config=asdict(config))
    matrix = X.matrix if isinstance(X, TfidfMatrix) else X
    report.n_features, report.n_observations = matrix.shape

    if config.baseline == "sc-x":
        labels0 = baseline_sc_x(
            matrix,
            config.n_clusters,
            scaling_k=config.scaling_k,
            seed=config.seed,
            restarts=config.kmeans_restarts,
        )
        clock.lap("baseline_sc_x")
        report.stage_seconds = clock.seconds
        assignment = ClusterAssignment(
            observation_labels=labels0 + 1, n_clusters=config.n_clusters
        )
        return assignment, report, artifacts

    echelon = rref(matrix, tol=config.rref_tol)
    clock.lap("rref")
    graph = SubspaceGraph(indicator=indicator(echelon))
    partition = components(graph)
    artifacts.graph = graph
    artifacts.partition = partition
    report.n_components = partition.n_components
    report.histogram = size_histogram(partition)
    clock.lap("components")

    if config.baseline == "sc-a":
        labels0 = baseline_sc_a(
            graph.adjacency(),
            config.n_clusters,
            seed=config.seed,
            restarts=config.kmeans_restarts,
        )
        clock.lap("baseline_sc_a")
        report.stage_seconds = clock.seconds
        assignment = ClusterAssignment(
            observation_labels=labels0 + 1, n_clusters=config.n_clusters
        )
        return assignment, report, artifacts

    n_c = partition.n_components
    if n_c < config.n_clusters:
        raise TooFewPoints(
            f"{n_c} connected components cannot form {config.n_clusters} clusters"
        )
    if n_c == 1:
        subspace_labels0 = np.zeros(1, dtype=np.int64)
        clock.lap("spectral")
    else:
        bases = component_bases(matrix, partition, rank_tol=config.rank_tol)
        clock.lap("bases")
        dmatrix = dissimilarity_matrix(bases)
        artifacts.dissimilarity = dmatrix
        clock.lap("dissimilarity")
        affinity = local_scaling_affinity(dmatrix, k=min(config.scaling_k, n_c - 1))
        clock.lap("affinity")
        subspace_labels0 = spectral_cluster(
            affinity,
            config.n_clusters,
            seed=config.seed,
            restarts=config.kmeans_restarts,
        )
        clock.lap("spectral")
    observation_labels0 = propagate(partition, subspace_labels0)
    clock.lap("propagate")
    report.stage_seconds = clock.seconds
    assignment = ClusterAssignment(
        observation_labels=observation_labels0 + 1,
        n_clusters=config.n_clusters,
        subspace_labels=subspace_labels0 + 1,
    )
    return assignment, report, artifacts


def _load_input(config: PipelineConfig):
    path = Path(config.input_path)
    if path.suffix.lower() == ".mtx":
        return mio.read_tfidf(path), None
    docs = mio.read_documents(path)
    vocab = build_vocabulary(
        docs,
        min_df=config.min_df,
        lowercase=config.lowercase,
        stop_words=config.stop_words,
    )
    matrix = tfidf(
        docs,
        vocab,
        normalize=config.normalize_columns,
        lowercase=config.lowercase,
        stop_words=config.stop_words,
    )
    return matrix, docs


def evaluate_against_truth(pred_labels, truth_labels) -> dict[str, float]:
    """Purity, NMI, and ARI of predictions against ground truth."""
    return {
        "purity": purity(pred_labels, truth_labels),
        "nmi": nmi(pred_labels, truth_labels),
        "ari": ari(pred_labels, truth_labels),
    }


def run_mac(config: PipelineConfig):
    """Load input, run the full pipeline, and write labels plus report.

    The input may be a raw corpus (text file or directory) or a Matrix
    Market file produced by ``vectorize``; metrics are appended to the
    report whenever ground-truth labels ride along with the input.

    Returns (ClusterAssignment, RunReport).
    """
    config.validate()
    if config.input_path is None:
        raise DataError("config.input_path is required")
    t0 = time.perf_counter()
    tfidf_matrix, _ = _load_input(config)
    vectorize_seconds = round(time.perf_counter() - t0, 6)

    assignment, report, artifacts = cluster_matrix(tfidf_matrix, config)
    report.stage_seconds = {"vectorize": vectorize_seconds, **report.stage_seconds}
    report.dropped_documents = list(tfidf_matrix.dropped_ids)

    if tfidf_matrix.labels is not None:
        pairs = [
            (pred, truth)
            for pred, truth in zip(assignment.observation_labels, tfidf_matrix.labels)
            if truth != ""
        ]
        if pairs:
            preds = [p for p, _ in pairs]
            truths = [t for _, t in pairs]
            report.metrics = evaluate_against_truth(preds, truths)

    if config.labels_out:
        mio.write_labels_csv(
            config.labels_out, tfidf_matrix.doc_ids, assignment.observation_labels
        )
    if config.dissimilarity_out and artifacts.dissimilarity is not None:
        mio.write_dissimilarity_csv(
            config.dissimilarity_out, artifacts.dissimilarity.values
        )
    if config.report_out:
        mio.write_report_json(config.report_out, report.to_dict())
    return assignment, report
