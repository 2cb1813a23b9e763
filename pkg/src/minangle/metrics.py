"""External cluster validation: purity, NMI, and adjusted Rand index.

All three are computed from the predicted-by-true contingency table and
are invariant to label renaming. NMI uses natural-log entropies with
geometric-mean normalization; ARI follows the permutation-model
chance correction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, LengthMismatch


@dataclass
class ContingencyTable:
    """Joint counts of predicted clusters (rows) by true classes (columns)."""

    counts: np.ndarray

    @classmethod
    def from_labels(cls, pred, truth) -> "ContingencyTable":
        pred = np.asarray(pred)
        truth = np.asarray(truth)
        if pred.shape[0] != truth.shape[0]:
            raise LengthMismatch(
                f"label lengths differ: {pred.shape[0]} vs {truth.shape[0]}"
            )
        if pred.shape[0] == 0:
            raise EmptyInput("cannot evaluate empty labelings")
        _, pi = np.unique(pred, return_inverse=True)
        _, ti = np.unique(truth, return_inverse=True)
        counts = np.zeros((pi.max() + 1, ti.max() + 1), dtype=np.int64)
        np.add.at(counts, (pi, ti), 1)
        return cls(counts=counts)

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def purity(pred, truth) -> float:
    """Fraction of points covered by each cluster's majority class."""
    table = ContingencyTable.from_labels(pred, truth)
    return float(table.counts.max(axis=1).sum() / table.total)


def nmi(pred, truth) -> float:
    """Mutual information over the geometric mean of the two entropies.

    Degenerate conventions: 1.0 when both partitions are a single
    cluster (they are then identical), 0.0 when exactly one entropy
    vanishes.
    """
    table = ContingencyTable.from_labels(pred, truth)
    n = table.total
    p_joint = table.counts / n
    p_pred = table.row_sums / n
    p_true = table.col_sums / n
    h_pred = float(-np.sum(p_pred[p_pred > 0] * np.log(p_pred[p_pred > 0])))
    h_true = float(-np.sum(p_true[p_true > 0] * np.log(p_true[p_true > 0])))
    if h_pred == 0.0 and h_true == 0.0:
        return 1.0
    if h_pred == 0.0 or h_true == 0.0:
        return 0.0
    mask = p_joint > 0
    outer = np.outer(p_pred, p_true)
    info = float(np.sum(p_joint[mask] * np.log(p_joint[mask] / outer[mask])))
    return float(np.clip(info / np.sqrt(h_pred * h_true), 0.0, 1.0))


def _comb2(x: np.ndarray) -> np.ndarray:
    return x * (x - 1) // 2


def ari(pred, truth) -> float:
    """Adjusted Rand index in [-1, 1], exact integer pair counts.

    Defined as 1.0 when the chance-corrected denominator vanishes
    (both partitions all-singleton or all-in-one, hence identical).
    """
    table = ContingencyTable.from_labels(pred, truth)
    n = table.total
    if n < 2:
        return 1.0
    index = int(_comb2(table.counts).sum())
    sum_rows = int(_comb2(table.row_sums).sum())
    sum_cols = int(_comb2(table.col_sums).sum())
    pairs = n * (n - 1) // 2
    expected = sum_rows * sum_cols / pairs
    maximum = 0.5 * (sum_rows + sum_cols)
    denom = maximum - expected
    if denom == 0.0:
        return 1.0
    return float((index - expected) / denom)
