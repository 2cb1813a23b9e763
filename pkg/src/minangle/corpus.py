"""Short-text ingestion and sparse TF-IDF vectorization.

Documents become columns of a P x N compressed-sparse-column matrix,
where P is the vocabulary size. The weighting is raw term count times
``ln(N / df) + 1``, with columns L2-normalized by default so that the
downstream subspace geometry is scale free.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import sparse

from .errors import AllTermsFiltered, EmptyInput, EmptyMatrix

# Unicode-aware word characters, underscore excluded: splits on anything
# that is not a letter or digit.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class Document:
    """One raw short text with a stable id and optional ground-truth label."""

    id: str
    text: str
    label: Optional[str] = None


@dataclass
class Vocabulary:
    """Term-to-row-index map with exact document-frequency counts.

    Indices are dense in ``0..size-1`` and follow first-appearance order
    over the document sequence the vocabulary was built from.
    """

    index: dict[str, int]
    df: dict[str, int]
    n_docs: int

    @property
    def size(self) -> int:
        return len(self.index)

    def terms(self) -> list[str]:
        """Row-ordered term list."""
        out = [""] * len(self.index)
        for term, i in self.index.items():
            out[i] = term
        return out

    def idf(self, term: str) -> float:
        """Smoothed inverse document frequency, ln(N/df) + 1."""
        return math.log(self.n_docs / self.df[term]) + 1.0


@dataclass
class TfidfMatrix:
    """P x N TF-IDF matrix with row/column identity attached.

    ``dropped_ids`` records documents whose every token fell outside the
    vocabulary; they have no column.
    """

    matrix: sparse.csc_matrix
    terms: list[str]
    doc_ids: list[str]
    labels: Optional[list[str]] = None
    dropped_ids: list[str] = field(default_factory=list)

    @property
    def n_features(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_observations(self) -> int:
        return self.matrix.shape[1]


def tokenize(
    text: str,
    lowercase: bool = True,
    stop_words: Optional[Iterable[str]] = None,
) -> list[str]:
    """Split a raw string into alphanumeric tokens.

    Lowercases (by default) and splits on every non-alphanumeric
    character; deterministic, no stemming.
    """
    if lowercase:
        text = text.lower()
    tokens = _TOKEN_RE.findall(text)
    if stop_words:
        stops = set(stop_words)
        tokens = [t for t in tokens if t not in stops]
    return tokens


def build_vocabulary(
    docs: Sequence[Document],
    min_df: int = 1,
    lowercase: bool = True,
    stop_words: Optional[Iterable[str]] = None,
) -> Vocabulary:
    """Collect every term with document frequency >= min_df.

    Index order is first appearance over the given document order, which
    keeps vectorization deterministic under parallel ingestion.
    """
    if not docs:
        raise EmptyInput("cannot build a vocabulary from zero documents")
    df: Counter[str] = Counter()
    appearance: dict[str, None] = {}
    for doc in docs:
        seen = set()
        for term in tokenize(doc.text, lowercase=lowercase, stop_words=stop_words):
            if term not in seen:
                seen.add(term)
                df[term] += 1
            if term not in appearance:
                appearance[term] = None
    index: dict[str, int] = {}
    kept_df: dict[str, int] = {}
    for term in appearance:
        if df[term] >= min_df:
            index[term] = len(index)
            kept_df[term] = df[term]
    if not index:
        raise AllTermsFiltered(
            f"no term reaches document frequency {min_df} in {len(docs)} documents"
        )
    return Vocabulary(index=index, df=kept_df, n_docs=len(docs))


def tfidf(
    docs: Sequence[Document],
    vocab: Vocabulary,
    normalize: bool = True,
    lowercase: bool = True,
    stop_words: Optional[Iterable[str]] = None,
) -> TfidfMatrix:
    """Vectorize documents against a vocabulary.

    Entry (t, d) is ``count(t in d) * (ln(N/df(t)) + 1)`` with N and df
    frozen at vocabulary-build time. Documents with no in-vocabulary
    term are dropped and reported via ``dropped_ids``.
    """
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    doc_ids: list[str] = []
    labels: list[str] = []
    any_label = False
    dropped: list[str] = []
    for doc in docs:
        counts = Counter(
            t
            for t in tokenize(doc.text, lowercase=lowercase, stop_words=stop_words)
            if t in vocab.index
        )
        if not counts:
            dropped.append(doc.id)
            continue
        col = len(doc_ids)
        doc_ids.append(doc.id)
        if doc.label is not None:
            any_label = True
        labels.append(doc.label if doc.label is not None else "")
        for term, count in counts.items():
            rows.append(vocab.index[term])
            cols.append(col)
            vals.append(count * vocab.idf(term))
    if not doc_ids:
        raise EmptyMatrix("every document was dropped during vectorization")
    matrix = sparse.csc_matrix(
        (vals, (rows, cols)), shape=(vocab.size, len(doc_ids)), dtype=np.float64
    )
    if normalize:
        norms = np.sqrt(matrix.multiply(matrix).sum(axis=0)).A1
        inv = np.reciprocal(norms, where=norms > 0)
        matrix = matrix @ sparse.diags(inv)
        matrix = sparse.csc_matrix(matrix)
    return TfidfMatrix(
        matrix=matrix,
        terms=vocab.terms(),
        doc_ids=doc_ids,
        labels=labels if any_label else None,
        dropped_ids=dropped,
    )
