"""Mechanical verification of the Sasakian soliton theorems.

Each theorem reads: on a Sasakian manifold carrying a *-conformal eta-Ricci
soliton, a curvature condition forces specific soliton constants (or an
Einstein-type Ricci tensor). The hypothesis is evaluated exactly on the
input; when it holds the conclusion is compared against the solved
constants, always in the shifted variable ``lambda~``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from frame_soliton.geometry.curvature import Connection, CurvaturePack, nabla_ricci
from frame_soliton.geometry.derived import (
    ConditionKind,
    FlatnessKind,
    PseudoProjectiveParams,
    derivation_condition,
    flatness_consequence,
    phi_flatness,
    pseudo_projective_branch,
)
from frame_soliton.geometry.manifold import FrameManifold
from frame_soliton.geometry.result import ConditionReport
from frame_soliton.geometry.structure import StructureClass, classify_contact
from frame_soliton.kernel.rational import format_rat
from frame_soliton.soliton.solver import (
    SolitonSolution,
    SolutionStatus,
    solve_soliton,
)
from frame_soliton.soliton.variants import VariantFactory

logger = logging.getLogger(__name__)

HOLDS = "HOLDS"
FAILS = "FAILS"
NOT_APPLICABLE = "n/a"
VIOLATION = "VIOLATION"

THEOREM_LABELS = {
    "cyclic-ricci": "cyclic Ricci theorem",
    "ricci-symmetric": "Ricci-symmetric theorem",
    "r-xi-dot-s": "R·S theorem",
    "r-xi-dot-s-einstein": "R·S corollary",
    "s-xi-dot-r": "S·R theorem",
    "s-xi-dot-r-eta-einstein": "S·R corollary",
    "pbar-xi-dot-s": "P̄·S theorem",
    "pbar-xi-dot-s-einstein": "P̄·S corollary",
    "phi-conharmonic-flat": "φ-conharmonic theorem",
    "phi-conharmonic-flat-eta-einstein": "φ-conharmonic corollary",
    "phi-projective-flat": "φ-projective theorem",
    "phi-projective-flat-einstein": "φ-projective corollary",
}


@dataclass(frozen=True)
class TheoremEntry:
    """One theorem or corollary checked on one manifold.

    ``conclusion_holds`` is ``None`` when the hypothesis fails. ``label`` is
    the display name; ``id`` is the stable key.
    """

    id: str
    statement: str
    hypothesis_holds: bool
    conclusion_holds: Optional[bool] = None
    details: List[str] = field(default_factory=list)
    expected_mu: Optional[Fraction] = None
    label: str = ""

    @property
    def violation(self) -> bool:
        return self.hypothesis_holds and self.conclusion_holds is False

    @property
    def verdict(self) -> str:
        if self.violation:
            return VIOLATION
        if not self.hypothesis_holds:
            return NOT_APPLICABLE
        return HOLDS

    @property
    def display_name(self) -> str:
        return f"{self.label} [{self.id}]" if self.label else self.id

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "label": self.label,
            "statement": self.statement,
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion_holds": (
                NOT_APPLICABLE
                if self.conclusion_holds is None
                else self.conclusion_holds
            ),
            "verdict": self.verdict,
            "details": list(self.details),
        }


@dataclass(frozen=True)
class TheoremReport:
    manifold: str
    entries: List[TheoremEntry]

    @property
    def violations(self) -> List[TheoremEntry]:
        return [entry for entry in self.entries if entry.violation]

    @property
    def has_violation(self) -> bool:
        return bool(self.violations)

    def entry(self, theorem_id: str) -> TheoremEntry:
        return next(e for e in self.entries if e.id == theorem_id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "manifold": self.manifold,
            "entries": [entry.to_dict() for entry in self.entries],
            "violations": len(self.violations),
        }


def _word(flag: bool) -> str:
    return HOLDS if flag else FAILS


def _condition_word(report: ConditionReport) -> str:
    return _word(report.holds) if report.defined else NOT_APPLICABLE


def _constants_text(lambda_shifted: Fraction, mu: Fraction) -> str:
    return f"μ={format_rat(mu)}, λ̃={format_rat(lambda_shifted)}"


class _Harness:
    """Shared state for one verification run."""

    def __init__(
        self,
        m: FrameManifold,
        pack: CurvaturePack,
        structure: StructureClass,
        solution: SolitonSolution,
    ):
        self.m = m
        self.pack = pack
        self.n2 = 2 * m.n
        self.sasakian = structure.is_sasakian
        self.solution = solution
        self.soliton = solution.status is SolutionStatus.UNIQUE
        self.entries: List[TheoremEntry] = []

    @property
    def base(self) -> bool:
        return self.sasakian and self.soliton

    def base_details(self) -> List[str]:
        details = [
            f"sasakian: {_word(self.sasakian)}",
            f"soliton: {self.solution.status.value}",
        ]
        if self.soliton:
            details.append(
                _constants_text(self.solution.lambda_shifted, self.solution.mu)
            )
        return details

    def constants(
        self,
        theorem_id: str,
        statement: str,
        condition: bool,
        condition_text: str,
        mu: Fraction,
        lambda_shifted: Fraction,
        extra: Optional[List[str]] = None,
        defined: bool = True,
    ) -> bool:
        """Entry concluding ``mu`` and ``lambda~``; returns the hypothesis verdict."""
        hypothesis = self.base and condition
        word = _word(condition) if defined else NOT_APPLICABLE
        details = self.base_details() + [f"{condition_text}: {word}"]
        details += extra or []
        conclusion = None
        if hypothesis:
            conclusion = (
                self.solution.mu == mu
                and self.solution.lambda_shifted == lambda_shifted
            )
            details.append(f"expected {_constants_text(lambda_shifted, mu)}")
        self.add(theorem_id, statement, hypothesis, conclusion, details, mu)
        return hypothesis

    def ricci_form(
        self,
        theorem_id: str,
        statement: str,
        hypothesis: bool,
        alpha: Fraction,
        beta: Fraction,
    ) -> None:
        """Entry concluding ``S = alpha g + beta eta (x) eta``."""
        details = [f"expected S = {format_rat(alpha)}g + {format_rat(beta)}η⊗η"]
        conclusion = None
        if hypothesis:
            expected = self.m.g * alpha + self.m.eta_tensor_eta() * beta
            conclusion = bool(np.all(self.pack.S == expected))
        self.add(theorem_id, statement, hypothesis, conclusion, details)

    def add(
        self,
        theorem_id: str,
        statement: str,
        hypothesis: bool,
        conclusion: Optional[bool],
        details: List[str],
        expected_mu: Optional[Fraction] = None,
    ) -> None:
        self.entries.append(
            TheoremEntry(
                theorem_id,
                statement,
                hypothesis,
                conclusion,
                details,
                expected_mu=expected_mu,
                label=THEOREM_LABELS.get(theorem_id, ""),
            )
        )

    def predicate(
        self,
        theorem_id: str,
        statement: str,
        hypothesis: bool,
        conclusion: Callable[[], bool],
        details: List[str],
    ) -> None:
        self.add(
            theorem_id,
            statement,
            hypothesis,
            conclusion() if hypothesis else None,
            details,
        )


def verify_theorems(
    m: FrameManifold,
    pack: CurvaturePack,
    conn: Connection,
    params: PseudoProjectiveParams,
    structure: Optional[StructureClass] = None,
    solution: Optional[SolitonSolution] = None,
) -> TheoremReport:
    """Check every theorem and corollary on one manifold.

    Args:
        m: The manifold
        pack: Its curvature
        conn: Its connection
        params: Pseudo-projective constants (and optional ``r`` override)
        structure: Precomputed classification, computed when omitted
        solution: Precomputed star-conformal-eta solution, computed when
            omitted

    Returns:
        TheoremReport; an entry is a violation only when its hypothesis
        holds and its conclusion fails
    """
    if structure is None:
        structure = classify_contact(m, conn)
    if solution is None:
        solution = solve_soliton(
            m,
            pack,
            conn,
            VariantFactory.create("star-conformal-eta"),
            sasakian=structure.is_sasakian,
        )
    h = _Harness(m, pack, structure, solution)
    n2 = h.n2
    one = Fraction(1)

    nabla = nabla_ricci(m, conn, pack.ricci)
    cyclic_zero = nabla.cyclic.is_zero()
    h.predicate(
        "cyclic-ricci",
        "Sasakian + soliton => cyclic Ricci tensor",
        h.base,
        lambda: cyclic_zero,
        h.base_details() + [f"cyclic sum of ∇S vanishes: {_word(cyclic_zero)}"],
    )

    h.constants(
        "ricci-symmetric",
        "Sasakian + soliton + ∇S = 0 => μ = 1, λ̃ = -1",
        nabla.tensor.is_zero(),
        "∇S = 0",
        one,
        -one,
    )

    r_dot_s = derivation_condition(m, pack, ConditionKind.R_XI_DOT_S)
    hypothesis = h.constants(
        "r-xi-dot-s",
        "Sasakian + soliton + R(ξ,X)·S = 0 => μ = 1, λ̃ = -1",
        r_dot_s.holds,
        "R(ξ,X)·S = 0",
        one,
        -one,
    )
    h.ricci_form(
        "r-xi-dot-s-einstein",
        "Sasakian + soliton + R(ξ,X)·S = 0 => S = 2n g",
        hypothesis,
        Fraction(n2),
        Fraction(0),
    )

    s_dot_r = derivation_condition(m, pack, ConditionKind.S_XI_DOT_R)
    hypothesis = h.constants(
        "s-xi-dot-r",
        "Sasakian + soliton + S(ξ,X)·R = 0 => μ = 1-4n, λ̃ = 4n-1",
        s_dot_r.holds,
        "S(ξ,X)·R = 0",
        Fraction(1 - 2 * n2),
        Fraction(2 * n2 - 1),
    )
    h.ricci_form(
        "s-xi-dot-r-eta-einstein",
        "Sasakian + soliton + S(ξ,X)·R = 0 => S = -2n g + 4n η⊗η",
        hypothesis,
        Fraction(-n2),
        Fraction(2 * n2),
    )

    p_bar = derivation_condition(m, pack, ConditionKind.PBAR_XI_DOT_S, params)
    branch = pseudo_projective_branch(m, pack, params)
    p_bar_hypothesis = h.base and p_bar.holds
    p_bar_details = (
        h.base_details()
        + [f"P̄(ξ,X)·S = 0: {_condition_word(p_bar)}"]
        + ([p_bar.constraint] if p_bar.constraint else [])
        + p_bar.notes
    )

    def p_bar_conclusion() -> bool:
        mu_branch = solution.mu == 1 and solution.lambda_shifted == -1
        return mu_branch or branch == 0

    h.predicate(
        "pbar-xi-dot-s",
        "Sasakian + soliton + P̄(ξ,X)·S = 0 => (μ = 1, λ̃ = -1) "
        "or r(a + 2nb) = 2n(2n+1)a",
        p_bar_hypothesis,
        p_bar_conclusion,
        p_bar_details,
    )
    h.ricci_form(
        "pbar-xi-dot-s-einstein",
        "Sasakian + soliton + P̄(ξ,X)·S = 0, scalar branch excluded => S = 2n g",
        p_bar_hypothesis and branch != 0,
        Fraction(n2),
        Fraction(0),
    )

    for kind, theorem_id, mu, lambda_shifted, alpha, beta in (
        (
            FlatnessKind.CONHARMONIC,
            "phi-conharmonic-flat",
            Fraction(-n2),
            Fraction(n2),
            Fraction(-1),
            Fraction(n2 + 1),
        ),
        (
            FlatnessKind.PROJECTIVE,
            "phi-projective-flat",
            one,
            -one,
            Fraction(n2),
            Fraction(0),
        ),
    ):
        flat = phi_flatness(m, pack, kind, sasakian=h.sasakian)
        extra = [
            f"{check.name}: {_word(check.holds)}" for check in flat.details
        ] + flat.notes
        if h.base and flat.holds:
            consequence = flatness_consequence(m, pack, kind)
            extra.append(f"{consequence.name}: {_word(consequence.holds)}")
        hypothesis = h.constants(
            theorem_id,
            f"Sasakian + soliton + φ-{kind.value} flat => "
            f"μ = {format_rat(mu)}, λ̃ = {format_rat(lambda_shifted)}",
            flat.holds,
            f"φ-{kind.value} flat",
            mu,
            lambda_shifted,
            extra,
            defined=flat.defined,
        )
        form, suffix = (
            ("η-Einstein", "eta-einstein") if beta else ("Einstein", "einstein")
        )
        h.ricci_form(
            f"{theorem_id}-{suffix}",
            f"Sasakian + soliton + φ-{kind.value} flat => {form}",
            hypothesis,
            alpha,
            beta,
        )

    report = TheoremReport(manifold=m.name, entries=h.entries)
    if report.has_violation:
        logger.warning(
            f"{m.name}: theorem violations: {[e.id for e in report.violations]}"
        )
    return report
