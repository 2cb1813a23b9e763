"""Minimum-angle subspace clustering for very sparse high-dimensional data.

The pipeline reduces the data matrix to row echelon form, groups
observations that are linear combinations of each other into connected
components, measures principal-angle dissimilarity between the
components' spanning subspaces, and merges them with locally scaled
spectral clustering.
"""

from .angles import (
    DissimilarityMatrix,
    PrincipalAngleResult,
    dissimilarity,
    dissimilarity_matrix,
    principal_angles,
)
from .basis import SubspaceBasis, component_bases, subspace_basis
from .corpus import Document, TfidfMatrix, Vocabulary, build_vocabulary, tfidf, tokenize
from .graph import (
    ComponentPartition,
    SubspaceGraph,
    components,
    indicator,
    size_histogram,
)
from .metrics import ContingencyTable, ari, nmi, purity
from .pipeline import (
    ClusterAssignment,
    PipelineConfig,
    RunReport,
    cluster_matrix,
    run_mac,
)
from .rref import RrefResult, is_rref, nonpivot_coefficients, rref
from .spectral import (
    AffinityMatrix,
    baseline_sc_a,
    baseline_sc_x,
    kmeans,
    local_scaling_affinity,
    propagate,
    spectral_cluster,
)
from .synth import (
    ShortTextSpec,
    SubspaceMixtureSpec,
    gen_short_texts,
    gen_subspace_mixture,
)

__version__ = "0.1.0"

__all__ = [
    "AffinityMatrix",
    "ClusterAssignment",
    "ComponentPartition",
    "ContingencyTable",
    "DissimilarityMatrix",
    "Document",
    "PipelineConfig",
    "PrincipalAngleResult",
    "RrefResult",
    "RunReport",
    "ShortTextSpec",
    "SubspaceBasis",
    "SubspaceGraph",
    "SubspaceMixtureSpec",
    "TfidfMatrix",
    "Vocabulary",
    "ari",
    "baseline_sc_a",
    "baseline_sc_x",
    "build_vocabulary",
    "cluster_matrix",
    "component_bases",
    "components",
    "dissimilarity",
    "dissimilarity_matrix",
    "gen_short_texts",
    "gen_subspace_mixture",
    "indicator",
    "is_rref",
    "kmeans",
    "local_scaling_affinity",
    "nmi",
    "nonpivot_coefficients",
    "principal_angles",
    "propagate",
    "purity",
    "rref",
    "run_mac",
    "size_histogram",
    "spectral_cluster",
    "subspace_basis",
    "tfidf",
    "tokenize",
]
