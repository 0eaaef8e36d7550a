"""Result records for identity and condition checks.

Checks never raise when an identity fails; they return one of these records
with the first failing component as a witness.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from frame_soliton.kernel.rational import format_rat

Index = Tuple[int, ...]


def first_difference(
    lhs: np.ndarray, rhs: Optional[np.ndarray] = None
) -> Optional[Tuple[Index, Fraction]]:
    """First index (lexicographic) where ``lhs - rhs`` is nonzero.

    Returns:
        ``(index, lhs[index] - rhs[index])`` or ``None`` when equal
    """
    lhs = np.asarray(lhs, dtype=object)
    for index in product(*(range(size) for size in lhs.shape)):
        value = lhs[index] - (rhs[index] if rhs is not None else 0)
        if value != 0:
            return index, Fraction(value)
    return None


@dataclass(frozen=True)
class IdentityCheck:
    """Pass/fail verdict for one identity over all frame tuples."""

    name: str
    holds: bool
    witness: Optional[str] = None
    """Human-readable first failing component, 1-based frame names."""

    witness_index: Optional[Index] = None
    """0-based index of the first failing component."""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"name": self.name, "holds": self.holds}
        if self.witness_index is not None:
            data["witness_index"] = [i + 1 for i in self.witness_index]
        if self.witness is not None:
            data["witness"] = self.witness
        return data


def identity_check(
    name: str,
    lhs: np.ndarray,
    rhs: Optional[np.ndarray] = None,
    describe: Optional[Callable[[Index, Fraction], str]] = None,
) -> IdentityCheck:
    """Compare two component arrays exactly and wrap the verdict.

    Args:
        name: Identity name shown in reports
        lhs: Left-hand side components
        rhs: Right-hand side components (zero when omitted)
        describe: Renders the witness from ``(index, difference)``
    """
    difference = first_difference(lhs, rhs)
    if difference is None:
        return IdentityCheck(name=name, holds=True)
    index, value = difference
    if describe is not None:
        text = describe(index, value)
    else:
        names = ", ".join(f"e{i + 1}" for i in index)
        text = f"at ({names}) the two sides differ by {format_rat(value)}"
    return IdentityCheck(name=name, holds=False, witness=text, witness_index=index)


@dataclass(frozen=True)
class ConditionReport:
    """Verdict for a curvature condition evaluated on every frame tuple.

    ``holds`` is true iff the condition tensor vanishes identically.
    """

    kind: str
    holds: bool
    witness_index: Optional[Index] = None
    witness_value: Optional[Fraction] = None
    constraint: Optional[str] = None
    """Derived constraint, e.g. the branch equation that makes it vanish."""

    details: List[IdentityCheck] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    defined: bool = True
    """False when the tensor behind the condition does not exist in this
    dimension; ``holds`` is then False and ``notes`` says why."""

    @property
    def witness(self) -> Optional[str]:
        if self.witness_index is None or self.witness_value is None:
            return None
        names = ", ".join(f"e{i + 1}" for i in self.witness_index)
        return f"({names}) -> {format_rat(self.witness_value)}"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "kind": self.kind,
            "holds": self.holds if self.defined else "n/a",
        }
        if self.witness_index is not None and self.witness_value is not None:
            data["witness"] = {
                "index": [i + 1 for i in self.witness_index],
                "value": format_rat(self.witness_value),
            }
        if self.constraint is not None:
            data["constraint"] = self.constraint
        if self.details:
            data["details"] = [check.to_dict() for check in self.details]
        if self.notes:
            data["notes"] = list(self.notes)
        return data


def condition_report(
    kind: str,
    tensor: np.ndarray,
    constraint: Optional[str] = None,
    details: Optional[List[IdentityCheck]] = None,
    notes: Optional[List[str]] = None,
) -> ConditionReport:
    """Build a ConditionReport from a full condition tensor."""
    difference = first_difference(tensor)
    return ConditionReport(
        kind=kind,
        holds=difference is None,
        witness_index=difference[0] if difference else None,
        witness_value=difference[1] if difference else None,
        constraint=constraint,
        details=list(details or []),
        notes=list(notes or []),
    )


def undefined_condition(kind: str, reason: str) -> ConditionReport:
    """A condition whose tensor is not defined in the manifold's dimension."""
    return ConditionReport(kind=kind, holds=False, notes=[reason], defined=False)
