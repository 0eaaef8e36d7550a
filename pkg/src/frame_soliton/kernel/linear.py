"""Exact linear algebra over the rationals.

Gauss-Jordan elimination on ``Fraction`` rows: matrix inversion, leading
principal minors (positive-definiteness test) and solving of small
overdetermined systems with a three-way outcome.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from frame_soliton.exceptions import ParameterError

logger = logging.getLogger(__name__)


def _rows_of(matrix: Any) -> List[List[Fraction]]:
    array = np.asarray(matrix, dtype=object)
    return [[Fraction(value) for value in row] for row in array.tolist()]


def inverse_matrix(matrix: Any) -> Optional[np.ndarray]:
    """Invert a square rational matrix.

    Args:
        matrix: Square matrix as nested lists or an object array

    Returns:
        The inverse as an object array of Fraction, or ``None`` when the
        matrix is singular
    """
    rows = _rows_of(matrix)
    n = len(rows)
    inverse = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    for column in range(n):
        pivot = next((r for r in range(column, n) if rows[r][column] != 0), None)
        if pivot is None:
            return None
        rows[column], rows[pivot] = rows[pivot], rows[column]
        inverse[column], inverse[pivot] = inverse[pivot], inverse[column]

        scale = rows[column][column]
        rows[column] = [value / scale for value in rows[column]]
        inverse[column] = [value / scale for value in inverse[column]]

        for r in range(n):
            if r == column or rows[r][column] == 0:
                continue
            factor = rows[r][column]
            rows[r] = [a - factor * b for a, b in zip(rows[r], rows[column])]
            inverse[r] = [a - factor * b for a, b in zip(inverse[r], inverse[column])]

    result = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            result[i, j] = inverse[i][j]
    return result


def determinant(matrix: Any) -> Fraction:
    """Exact determinant by fraction elimination."""
    rows = _rows_of(matrix)
    n = len(rows)
    det = Fraction(1)
    for column in range(n):
        pivot = next((r for r in range(column, n) if rows[r][column] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != column:
            rows[column], rows[pivot] = rows[pivot], rows[column]
            det = -det
        det *= rows[column][column]
        for r in range(column + 1, n):
            factor = rows[r][column] / rows[column][column]
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[column])]
    return det


def leading_principal_minors(matrix: Any) -> List[Fraction]:
    """Determinants of the upper-left ``k x k`` blocks, ``k = 1..n``."""
    array = np.asarray(matrix, dtype=object)
    return [determinant(array[:k, :k]) for k in range(1, array.shape[0] + 1)]


class SolveStatus(str, Enum):
    """Outcome of :func:`solve_exact`."""

    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class LinearSystem:
    """Rows ``(coefficients, rhs)`` over named unknowns."""

    unknowns: Tuple[str, ...]
    rows: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...]

    def __post_init__(self):
        if not self.rows:
            raise ParameterError("A linear system needs at least one row")
        for number, (coefficients, _) in enumerate(self.rows):
            if len(coefficients) != len(self.unknowns):
                raise ParameterError(
                    "Row has the wrong number of coefficients",
                    f"row {number}: {len(coefficients)} for "
                    f"{len(self.unknowns)} unknowns",
                )

    @classmethod
    def build(
        cls,
        unknowns: Sequence[str],
        rows: Sequence[Tuple[Sequence[Any], Any]],
    ) -> "LinearSystem":
        """Build a system from loosely typed rows, converting to Fraction."""
        return cls(
            tuple(unknowns),
            tuple(
                (tuple(Fraction(c) for c in coefficients), Fraction(rhs))
                for coefficients, rhs in rows
            ),
        )


@dataclass(frozen=True)
class SolveResult:
    """Result of exact Gaussian elimination.

    ``assignment`` holds the unique solution, or for an underdetermined
    system the particular solution with every free unknown set to zero.
    ``nullspace`` spans the homogeneous solutions (one vector per free
    unknown).
    """

    status: SolveStatus
    assignment: Dict[str, Fraction] = field(default_factory=dict)
    pivots: Tuple[str, ...] = ()
    free: Tuple[str, ...] = ()
    nullspace: Tuple[Dict[str, Fraction], ...] = ()


def solve_exact(system: LinearSystem) -> SolveResult:
    """Solve a linear system exactly by Gauss-Jordan elimination.

    Args:
        system: The system to solve

    Returns:
        SolveResult with status ``unique``, ``underdetermined`` or
        ``inconsistent``
    """
    width = len(system.unknowns)
    matrix = [list(coefficients) + [rhs] for coefficients, rhs in system.rows]
    pivot_columns: List[int] = []
    row = 0

    for column in range(width):
        pivot = next(
            (r for r in range(row, len(matrix)) if matrix[r][column] != 0), None
        )
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        scale = matrix[row][column]
        matrix[row] = [value / scale for value in matrix[row]]
        for r in range(len(matrix)):
            if r != row and matrix[r][column] != 0:
                factor = matrix[r][column]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[row])]
        pivot_columns.append(column)
        row += 1
        if row == len(matrix):
            break

    for r in range(row, len(matrix)):
        if matrix[r][width] != 0:
            logger.debug(f"Inconsistent row after elimination: {r}")
            return SolveResult(status=SolveStatus.INCONSISTENT)

    names = system.unknowns
    pivots = tuple(names[c] for c in pivot_columns)
    free_columns = [c for c in range(width) if c not in pivot_columns]
    assignment = {name: Fraction(0) for name in names}
    for r, column in enumerate(pivot_columns):
        assignment[names[column]] = matrix[r][width]

    if not free_columns:
        logger.debug(f"Unique solution for {len(system.rows)} rows: {assignment}")
        return SolveResult(
            status=SolveStatus.UNIQUE, assignment=assignment, pivots=pivots
        )

    nullspace = []
    for free_column in free_columns:
        vector = {name: Fraction(0) for name in names}
        vector[names[free_column]] = Fraction(1)
        for r, column in enumerate(pivot_columns):
            vector[names[column]] = -matrix[r][free_column]
        nullspace.append(vector)
    return SolveResult(
        status=SolveStatus.UNDERDETERMINED,
        assignment=assignment,
        pivots=pivots,
        free=tuple(names[c] for c in free_columns),
        nullspace=tuple(nullspace),
    )
