"""Soliton variants, the exact soliton solver and the theorem harness."""

from frame_soliton.soliton.solver import (
    EinsteinClass,
    EinsteinKind,
    SolitonSolution,
    SolutionStatus,
    classify_einstein,
    einstein_consistency,
    soliton_residual,
    solve_soliton,
)
from frame_soliton.soliton.theorems import TheoremEntry, TheoremReport, verify_theorems
from frame_soliton.soliton.variants import SolitonVariant, TensorChoice, VariantFactory

__all__ = [
    "EinsteinClass",
    "EinsteinKind",
    "SolitonSolution",
    "SolitonVariant",
    "SolutionStatus",
    "TensorChoice",
    "TheoremEntry",
    "TheoremReport",
    "VariantFactory",
    "classify_einstein",
    "einstein_consistency",
    "soliton_residual",
    "solve_soliton",
    "verify_theorems",
]
