"""Exact arithmetic substrate: rationals, dense tensors, linear solving."""

from frame_soliton.kernel.linear import (
    LinearSystem,
    SolveResult,
    SolveStatus,
    determinant,
    inverse_matrix,
    leading_principal_minors,
    solve_exact,
)
from frame_soliton.kernel.rational import (
    ONE,
    ZERO,
    Rat,
    format_rat,
    parse_rat,
    rat_to_document,
)
from frame_soliton.kernel.tensor import (
    LOWER,
    UPPER,
    Tensor,
    contract,
    rat_einsum,
    to_rat_array,
)

__all__ = [
    "LOWER",
    "ONE",
    "UPPER",
    "ZERO",
    "LinearSystem",
    "Rat",
    "SolveResult",
    "SolveStatus",
    "Tensor",
    "contract",
    "determinant",
    "format_rat",
    "inverse_matrix",
    "leading_principal_minors",
    "parse_rat",
    "rat_einsum",
    "rat_to_document",
    "solve_exact",
    "to_rat_array",
]
