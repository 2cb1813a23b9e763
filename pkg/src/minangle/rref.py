"""Reduced row echelon form via Gauss-Jordan elimination.

Partial pivoting picks the largest-magnitude eligible entry in each
column (lowest row index on ties). Entries whose magnitude is at most
``tol * max|X|`` are treated as zero, which both decides pivot
eligibility and flushes rounding noise out of the sparse result.

The elimination runs on a dense column-major working copy so the
trailing-column update can go through an in-place BLAS rank-1 call;
rows touched per step are restricted to the nonzero multipliers while
the matrix is still sparse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.linalg.blas import dger

from .errors import IsPivotColumn, NonFiniteInput

# Below this fraction of dense rows the gather/scatter update beats the
# full-height BLAS rank-1 update.
_SPARSE_ROW_FRACTION = 0.25


@dataclass
class RrefResult:
    """Echelon form of a P x N matrix plus its pivot structure."""

    matrix: sparse.csc_matrix
    pivot_columns: list[int]
    tolerance: float

    def __post_init__(self):
        self._pivot_set = frozenset(self.pivot_columns)

    @property
    def rank(self) -> int:
        return len(self.pivot_columns)

    def is_pivot(self, j: int) -> bool:
        return j in self._pivot_set


def rref(X, tol: float = 1e-10) -> RrefResult:
    """Gauss-Jordan elimination with partial pivoting and zero flushing.

    Args:
        X: real matrix, dense array or scipy sparse, shape (P, N).
        tol: relative tolerance in (0, 1); the absolute zero threshold
            is ``tol * max|X|``.

    Returns:
        RrefResult with the flushed echelon matrix and the strictly
        increasing pivot column list. Column j is a pivot exactly when
        column j of X is not (within tolerance) a linear combination of
        columns 0..j-1.

    Raises:
        NonFiniteInput: X contains NaN or infinity.
        ValueError: tol outside (0, 1).
    """
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tol must lie in (0, 1), got {tol}")
    if sparse.issparse(X):
        if not np.all(np.isfinite(X.data)):
            raise NonFiniteInput("matrix contains non-finite entries")
        work = np.asfortranarray(X.toarray(), dtype=np.float64)
    else:
        work = np.asfortranarray(X, dtype=np.float64).copy(order="F")
        if not np.all(np.isfinite(work)):
            raise NonFiniteInput("matrix contains non-finite entries")

    n_rows, n_cols = work.shape
    scale = float(np.max(np.abs(work))) if work.size else 0.0
    thresh = tol * scale
    pivots: list[int] = []
    r = 0
    for j in range(n_cols):
        if r >= n_rows:
            break
        col = work[r:, j]
        local = int(np.argmax(np.abs(col)))
        if abs(col[local]) <= thresh:
            # No eligible pivot: the column is dependent on earlier ones.
            work[r:, j] = 0.0
            continue
        p = r + local
        if p != r:
            work[[r, p], :] = work[[p, r], :]
        work[r, j:] /= work[r, j]
        work[r, j] = 1.0
        multipliers = work[:, j].copy()
        multipliers[r] = 0.0
        touched = np.flatnonzero(multipliers)
        if touched.size and j + 1 < n_cols:
            if touched.size < _SPARSE_ROW_FRACTION * n_rows:
                work[touched, j + 1 :] -= np.outer(
                    multipliers[touched], work[r, j + 1 :]
                )
            else:
                dger(
                    -1.0,
                    multipliers,
                    work[r, j + 1 :],
                    a=work[:, j + 1 :],
                    overwrite_a=1,
                    overwrite_x=1,
                )
        if touched.size:
            work[touched, j] = 0.0
        pivots.append(j)
        r += 1

    work[np.abs(work) <= thresh] = 0.0
    return RrefResult(
        matrix=sparse.csc_matrix(work),
        pivot_columns=pivots,
        tolerance=tol,
    )


def nonpivot_coefficients(result: RrefResult, j: int) -> dict[int, float]:
    """Express non-pivot column j as a combination of pivot columns.

    Returns the sparse map {pivot column index: coefficient} such that
    ``X[:, j] ~= sum(coef * X[:, pivot])``. Row i of the echelon matrix
    corresponds to the i-th pivot, so the coefficients are simply the
    nonzero entries of column j.
    """
    if result.is_pivot(j):
        raise IsPivotColumn(f"column {j} is a pivot column")
    if not 0 <= j < result.matrix.shape[1]:
        raise IndexError(f"column {j} out of range")
    column = result.matrix.getcol(j).tocoo()
    coeffs: dict[int, float] = {}
    for row, value in zip(column.row, column.data):
        coeffs[result.pivot_columns[row]] = float(value)
    return coeffs


def is_rref(matrix, tol: float = 0.0) -> bool:
    """Check the four structural echelon conditions on a matrix.

    1. The leftmost nonzero entry of each row is 1.
    2. That entry is the only nonzero in its column.
    3. Leading entries move strictly right as the row index grows.
    4. All-zero rows sit below every nonzero row.
    """
    dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix)
    dense = np.where(np.abs(dense) <= tol, 0.0, dense)
    last_lead = -1
    seen_zero_row = False
    for row in dense:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            seen_zero_row = True
            continue
        if seen_zero_row:
            return False  # nonzero row below a zero row
        lead = int(nonzero[0])
        if row[lead] != 1.0:
            return False
        if lead <= last_lead:
            return False
        if np.count_nonzero(dense[:, lead]) != 1:
            return False
        last_lead = lead
    return True
