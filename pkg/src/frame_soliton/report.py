"""Full manifold report: every computation tied together and rendered.

Both renderings are deterministic. Text output names frame vectors
``e1..e{dim}``; the structured output uses explicit 1-based index arrays and
exact rational strings.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from frame_soliton.geometry.curvature import (
    Connection,
    CurvaturePack,
    compute_curvature,
    levi_civita,
)
from frame_soliton.geometry.derived import (
    ConditionKind,
    FlatnessKind,
    PseudoProjectiveParams,
    derivation_condition,
    phi_flatness,
)
from frame_soliton.geometry.identities import (
    SasakianSuite,
    classical_identity_suite,
    sasakian_identity_suite,
)
from frame_soliton.geometry.manifold import FrameManifold, frame_name
from frame_soliton.geometry.result import ConditionReport, IdentityCheck
from frame_soliton.geometry.structure import StructureClass, classify_contact
from frame_soliton.kernel.rational import format_rat
from frame_soliton.soliton.solver import (
    EinsteinClass,
    SolitonSolution,
    SolutionStatus,
    classify_einstein,
    solve_soliton,
)
from frame_soliton.soliton.theorems import TheoremEntry, TheoremReport, verify_theorems
from frame_soliton.soliton.variants import VariantFactory
from frame_soliton.utils import format_index, format_vector, yes_no

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Discrepancy:
    """Engine value next to a published reference value that disagrees."""

    table: str
    index: Tuple[int, int]
    engine: str
    reference: str

    def label(self) -> str:
        i, j = self.index
        if self.table == "connection":
            return f"∇_{frame_name(i)} {frame_name(j)}"
        return f"S({frame_name(i)},{frame_name(j)})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "table": self.table,
            "index": [i + 1 for i in self.index],
            "engine": self.engine,
            "reference": self.reference,
        }


def find_discrepancies(
    m: FrameManifold, conn: Connection, pack: CurvaturePack
) -> List[Discrepancy]:
    """Compare the engine against ``m.reference``.

    Connection pairs absent from the reference table count as zero; Ricci
    entries are compared only where the reference lists them.
    """
    reference = m.reference
    if reference is None:
        return []
    found = []
    if reference.connection:
        for i in range(m.dim):
            for j in range(m.dim):
                engine = conn.nabla(i, j)
                published = reference.connection.get((i, j), (Fraction(0),) * m.dim)
                if any(a != b for a, b in zip(engine, published)):
                    found.append(
                        Discrepancy(
                            "connection",
                            (i, j),
                            format_vector(engine),
                            format_vector(published),
                        )
                    )
    for (i, j), published_value in sorted(reference.ricci.items()):
        if pack.S[i, j] != published_value:
            found.append(
                Discrepancy(
                    "ricci",
                    (i, j),
                    format_rat(pack.S[i, j]),
                    format_rat(published_value),
                )
            )
    if found:
        logger.warning(
            f"{m.name}: {len(found)} value(s) disagree with the reference tables"
        )
    return found


@dataclass(frozen=True)
class Report:
    manifold: FrameManifold
    params: PseudoProjectiveParams
    structure: StructureClass
    connection: Connection
    curvature: CurvaturePack
    classical: List[IdentityCheck]
    sasakian_suite: Optional[SasakianSuite]
    conditions: List[ConditionReport]
    solutions: List[SolitonSolution]
    einstein: Tuple[EinsteinClass, EinsteinClass]
    theorems: TheoremReport
    discrepancies: List[Discrepancy] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        m = self.manifold
        pack = self.curvature
        data: Dict[str, Any] = {
            "manifold": {
                "name": m.name,
                "dimension": m.dim,
                "description": m.description,
                "brackets": [
                    {
                        "index": [i + 1, j + 1],
                        "value": {
                            str(k + 1): format_rat(v) for k, v in coeffs.items()
                        },
                    }
                    for i, j, coeffs in m.nonzero_brackets()
                ],
            },
            "parameters": {
                "a": format_rat(self.params.a),
                "b": format_rat(self.params.b),
                "r_override": (
                    format_rat(self.params.r_override)
                    if self.params.r_override is not None
                    else None
                ),
            },
            "structure": self.structure.to_dict(),
            "connection": [
                {
                    "index": [i + 1, j + 1],
                    "value": [format_rat(v) for v in self.connection.nabla(i, j)],
                }
                for i in range(m.dim)
                for j in range(m.dim)
                if any(self.connection.nabla(i, j))
            ],
            "curvature": {
                "riemann": [
                    {"index": [k + 1 for k in index], "value": format_rat(value)}
                    for index, value in pack.riemann.nonzero_items()
                ],
                "ricci": [[format_rat(v) for v in row] for row in pack.S.tolist()],
                "scalar": format_rat(pack.scalar),
                "star_ricci": [
                    [format_rat(v) for v in row] for row in pack.S_star.tolist()
                ],
            },
            "einstein": self.einstein[0].to_dict(),
            "star_einstein": self.einstein[1].to_dict(),
            "identities": {
                "classical": [check.to_dict() for check in self.classical],
                "sasakian": (
                    self.sasakian_suite.to_dict()
                    if self.sasakian_suite is not None
                    else None
                ),
            },
            "conditions": [condition.to_dict() for condition in self.conditions],
            "solitons": [solution.to_dict() for solution in self.solutions],
            "theorems": self.theorems.to_dict(),
            "discrepancies": [d.to_dict() for d in self.discrepancies],
        }
        return data


def build_report(
    m: FrameManifold, params: Optional[PseudoProjectiveParams] = None
) -> Report:
    """Run every computation on ``m`` and collect the results.

    Args:
        m: The manifold
        params: Pseudo-projective constants; ``a = b = 1`` when omitted

    Returns:
        The assembled Report
    """
    params = params or PseudoProjectiveParams()
    conn = levi_civita(m)
    pack = compute_curvature(m, conn)
    structure = classify_contact(m, conn)
    sasakian = structure.is_sasakian

    conditions = [
        derivation_condition(m, pack, ConditionKind.R_XI_DOT_S),
        derivation_condition(m, pack, ConditionKind.S_XI_DOT_R),
        derivation_condition(m, pack, ConditionKind.PBAR_XI_DOT_S, params),
        phi_flatness(m, pack, FlatnessKind.CONHARMONIC, sasakian=sasakian),
        phi_flatness(m, pack, FlatnessKind.PROJECTIVE, sasakian=sasakian),
    ]

    solutions = [
        solve_soliton(m, pack, conn, VariantFactory.create(name), sasakian=sasakian)
        for name in VariantFactory.get_available_variants()
    ]
    headline = next(s for s in solutions if s.variant == VariantFactory.DEFAULT)

    report = Report(
        manifold=m,
        params=params,
        structure=structure,
        connection=conn,
        curvature=pack,
        classical=classical_identity_suite(m, conn, pack),
        sasakian_suite=sasakian_identity_suite(m, conn, pack) if sasakian else None,
        conditions=conditions,
        solutions=solutions,
        einstein=classify_einstein(m, pack),
        theorems=verify_theorems(m, pack, conn, params, structure, headline),
        discrepancies=find_discrepancies(m, conn, pack),
    )
    logger.info(f"Report built for {m.name}")
    return report


def _upper_entries(T: Any) -> List[Tuple[Tuple[int, int], Fraction]]:
    """Nonzero entries of a symmetric matrix with ``i <= j``."""
    size = len(T)
    return [
        ((i, j), T[i, j])
        for i in range(size)
        for j in range(i, size)
        if T[i, j] != 0
    ]


def _check_line(check: IdentityCheck) -> str:
    line = f"  {check.name}: {'holds' if check.holds else 'FAILS'}"
    if check.witness:
        line += f" ({check.witness})"
    return line


def _einstein_line(label: str, einstein: EinsteinClass) -> str:
    line = f"{label}: {einstein.kind.value}"
    if einstein.alpha is not None:
        line += f", alpha = {format_rat(einstein.alpha)}"
    if einstein.beta is not None:
        line += f", beta = {format_rat(einstein.beta)}"
    return line


def solution_line(solution: SolitonSolution) -> str:
    """One-line soliton verdict: ``unique: λ̃=5, μ=-5; λ+μ = ...: satisfied``."""
    if solution.status is SolutionStatus.NONE:
        return "none: no constant pair solves the equation"
    line = (
        f"{solution.status.value}: λ̃={format_rat(solution.lambda_shifted)}, "
        f"μ={format_rat(solution.mu)}"
    )
    if solution.free:
        line += f" (free: {', '.join(solution.free)})"
    if solution.constraint_check is not None:
        verdict = "satisfied" if solution.constraint_check else "violated"
        line += f"; λ+μ = (1/2)(p+2/{solution.dim}): {verdict}"
    return line


def theorem_line(entry: TheoremEntry) -> str:
    """``label [id]: hypothesis HOLDS, conclusion HOLDS (μ=1)``."""
    hypothesis = "HOLDS" if entry.hypothesis_holds else "FAILS"
    if entry.conclusion_holds is None:
        conclusion = "n/a"
    else:
        conclusion = "HOLDS" if entry.conclusion_holds else "FAILS"
    line = f"{entry.display_name}: hypothesis {hypothesis}, conclusion {conclusion}"
    if entry.expected_mu is not None and entry.conclusion_holds:
        line += f" (μ={format_rat(entry.expected_mu)})"
    if entry.violation:
        line += " VIOLATION"
    return line


def render_text(report: Report) -> List[str]:
    """Render the report as plain text lines."""
    m = report.manifold
    pack = report.curvature
    lines = [f"manifold: {m.name} (dimension {m.dim})"]
    if m.description:
        lines.append(f"  {m.description}")
    brackets = m.nonzero_brackets()
    lines.append("brackets:")
    if not brackets:
        lines.append("  all zero")
    for i, j, _ in brackets:
        lines.append(
            f"  [{frame_name(i)},{frame_name(j)}] = {format_vector(m.bracket(i, j))}"
        )

    lines.append("structure:")
    for flag in report.structure.flags():
        line = f"  {flag.name}: {yes_no(flag.passed)}"
        if flag.witness:
            line += f" ({flag.witness})"
        lines.append(line)

    lines.append("connection:")
    nonzero = [
        (i, j)
        for i in range(m.dim)
        for j in range(m.dim)
        if any(report.connection.nabla(i, j))
    ]
    if not nonzero:
        lines.append("  all zero")
    for i, j in nonzero:
        lines.append(
            f"  ∇_{frame_name(i)} {frame_name(j)} = "
            f"{format_vector(report.connection.nabla(i, j))}"
        )

    lines.append("curvature:")
    lines.append(
        f"  nonzero R components: {len(list(pack.riemann.nonzero_items()))}"
    )
    for i in range(m.dim):
        for j in range(i + 1, m.dim):
            for k in range(m.dim):
                vector = pack.R[i, j, k]
                if any(vector):
                    lines.append(
                        f"  R({frame_name(i)},{frame_name(j)}){frame_name(k)} = "
                        f"{format_vector(vector)}"
                    )
    for (i, j), value in _upper_entries(pack.S):
        lines.append(f"  S({format_index((i, j))}) = {format_rat(value)}")
    lines.append(f"  r = {format_rat(pack.scalar)}")
    for (i, j), value in _upper_entries(pack.S_star):
        lines.append(f"  S*({format_index((i, j))}) = {format_rat(value)}")
    lines.append(f"  {_einstein_line('Ricci', report.einstein[0])}")
    lines.append(f"  {_einstein_line('*-Ricci', report.einstein[1])}")

    lines.append("identities:")
    lines.extend(_check_line(check) for check in report.classical)
    if report.sasakian_suite is not None:
        lines.extend(_check_line(check) for check in report.sasakian_suite.checks)
        constant = report.sasakian_suite.constant_curvature
        lines.append(_check_line(constant) + " [reported only]")

    lines.append("conditions:")
    for condition in report.conditions:
        if not condition.defined:
            verdict = "n/a"
        else:
            verdict = "holds" if condition.holds else "fails"
        line = f"  {condition.kind}: {verdict}"
        if condition.witness:
            line += f" (first nonzero {condition.witness})"
        lines.append(line)
        if condition.constraint:
            lines.append(f"    {condition.constraint}")
        lines.extend(f"    {note}" for note in condition.notes)
        lines.extend(f"  {_check_line(check)}" for check in condition.details)

    lines.append("solitons:")
    for solution in report.solutions:
        lines.append(f"  {solution.variant}: {solution_line(solution)}")
        if solution.lambda_shifted is not None:
            lines.append(
                f"    λ = {solution.lambda_text()}, "
                f"μ = {format_rat(solution.mu)}"
            )
        if solution.nature is not None:
            lines.append(f"    nature: {solution.nature}")
        lines.extend(f"  {_check_line(c)}" for c in solution.einstein_checks)

    lines.append("theorems:")
    lines.extend(f"  {theorem_line(entry)}" for entry in report.theorems.entries)

    if m.reference is not None:
        lines.append("reference discrepancies:")
        if m.reference.source:
            lines.append(f"  source: {m.reference.source}")
        if not report.discrepancies:
            lines.append("  none")
        for d in report.discrepancies:
            lines.append(f"  {d.label()}: engine {d.engine}, reference {d.reference}")
    return lines
