"""Synthetic datasets with known ground truth.

Two generators: a union-of-subspaces numeric mixture (orthonormal bases
from QR of Gaussian draws, Gaussian coordinates, optional additive
noise) and a sparse short-text corpus whose documents draw a handful of
distinct words from per-category vocabularies with a small shared-word
leak. Both are fully determined by their spec plus seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Document
from .errors import InvalidSpec


@dataclass
class SubspaceMixtureSpec:
    """Parameters for a union-of-subspaces sample in R^ambient_dim."""

    ambient_dim: int = 100
    n_subspaces: int = 5
    subspace_dim: int = 2
    points_per_subspace: int = 50
    noise_sigma: float = 0.0
    seed: int = 0

    def validate(self) -> None:
        if self.subspace_dim >= self.ambient_dim:
            raise InvalidSpec("subspace_dim must be smaller than ambient_dim")
        if min(self.ambient_dim, self.n_subspaces, self.subspace_dim,
               self.points_per_subspace) < 1:
            raise InvalidSpec("all counts must be >= 1")
        if self.noise_sigma < 0.0:
            raise InvalidSpec("noise_sigma must be >= 0")


@dataclass
class ShortTextSpec:
    """Parameters for a sparse short-text corpus with category labels.

    Besides fresh documents, a fraction of documents repeat an earlier
    same-category word set (``duplicate_rate``) or concatenate two
    earlier disjoint ones (``merge_rate``), the way real product-name
    corpora repeat and combine short names. Merges only happen when the
    combined length stays inside ``words_per_doc``.
    """

    n_categories: int = 5
    vocab_per_category: int = 600
    shared_vocab: int = 100
    words_per_doc: tuple[int, int] = (3, 8)
    docs_per_category: int = 600
    shared_word_rate: float = 0.05
    duplicate_rate: float = 0.08
    merge_rate: float = 0.10
    seed: int = 0

    def validate(self) -> None:
        lo, hi = self.words_per_doc
        if lo < 1 or hi < lo:
            raise InvalidSpec("words_per_doc must satisfy 1 <= min <= max")
        if min(self.n_categories, self.vocab_per_category, self.docs_per_category) < 1:
            raise InvalidSpec("all counts must be >= 1")
        if self.shared_vocab < 0:
            raise InvalidSpec("shared_vocab must be >= 0")
        for name in ("shared_word_rate", "duplicate_rate", "merge_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidSpec(f"{name} must lie in [0, 1]")
        if self.duplicate_rate + self.merge_rate > 1.0:
            raise InvalidSpec("duplicate_rate + merge_rate cannot exceed 1")
        if hi > self.vocab_per_category:
            raise InvalidSpec("words_per_doc max cannot exceed vocab_per_category")


def gen_subspace_mixture(spec: SubspaceMixtureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sample points from a union of random linear subspaces.

    Returns the (ambient_dim, N) data matrix with columns grouped by
    subspace and the length-N ground-truth labels.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    columns = []
    labels = []
    for k in range(spec.n_subspaces):
        gauss = rng.standard_normal((spec.ambient_dim, spec.subspace_dim))
        q, _ = np.linalg.qr(gauss)
        coords = rng.standard_normal((spec.subspace_dim, spec.points_per_subspace))
        block = q @ coords
        if spec.noise_sigma > 0.0:
            block = block + spec.noise_sigma * rng.standard_normal(block.shape)
        columns.append(block)
        labels.extend([k] * spec.points_per_subspace)
    return np.hstack(columns), np.array(labels, dtype=np.int64)


def gen_short_texts(spec: ShortTextSpec) -> list[Document]:
    """Generate labeled short documents with distinct in-document words.

    Fresh documents sample their word count uniformly from the
    configured range; every word independently comes from the shared
    pool with probability ``shared_word_rate``, otherwise from the
    category pool, and never repeats within a document. Duplicate and
    merged documents reuse earlier same-category word sets, which gives
    the corpus the small groups of exactly interdependent texts that
    very short real-world names exhibit.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    category_vocab = [
        [f"c{k}w{i}" for i in range(spec.vocab_per_category)]
        for k in range(spec.n_categories)
    ]
    shared = [f"sw{i}" for i in range(spec.shared_vocab)]
    docs: list[Document] = []
    lo, hi = spec.words_per_doc
    for k in range(spec.n_categories):
        pool = category_vocab[k]
        earlier: list[tuple[str, ...]] = []
        for _ in range(spec.docs_per_category):
            words = None
            u = rng.random()
            if u < spec.duplicate_rate and earlier:
                words = list(earlier[int(rng.integers(len(earlier)))])
            elif u < spec.duplicate_rate + spec.merge_rate and len(earlier) >= 2:
                for _attempt in range(8):
                    i = int(rng.integers(len(earlier)))
                    j = int(rng.integers(len(earlier)))
                    if i == j:
                        continue
                    a, b = earlier[i], earlier[j]
                    if lo <= len(a) + len(b) <= hi and not set(a) & set(b):
                        words = list(a) + list(b)
                        break
            if words is None:
                n_words = int(rng.integers(lo, hi + 1))
                n_shared = 0
                if shared and spec.shared_word_rate > 0.0 and n_words > 1:
                    n_shared = int(rng.binomial(n_words, spec.shared_word_rate))
                    n_shared = min(n_shared, len(shared), n_words - 1)
                n_own = n_words - n_shared
                words = [pool[i] for i in rng.choice(len(pool), size=n_own, replace=False)]
                if n_shared:
                    words += [
                        shared[i]
                        for i in rng.choice(len(shared), size=n_shared, replace=False)
                    ]
            earlier.append(tuple(words))
            docs.append(
                Document(
                    id=f"d{len(docs):05d}",
                    text=" ".join(words),
                    label=f"cat{k}",
                )
            )
    return docs
