"""Exact solving of the soliton equation and Einstein-type classification.

Every variant is evaluated in one sign convention,
``L_V g + 2T + 2 lambda~ g + 2 mu eta (x) eta = 0``, where ``T`` is the Ricci
or *-Ricci tensor and ``lambda~`` is the constant after the conformal shift
``lambda~ = lambda - (1/2)(p + 2/dim)``. The pressure ``p`` is never given a
value; ``lambda`` is reported as an affine expression in it.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from frame_soliton.geometry.curvature import (
    Connection,
    CurvaturePack,
    lie_derivative_metric,
)
from frame_soliton.geometry.manifold import FrameManifold
from frame_soliton.geometry.result import IdentityCheck, identity_check
from frame_soliton.kernel.linear import LinearSystem, SolveStatus, solve_exact
from frame_soliton.kernel.rational import format_rat
from frame_soliton.kernel.tensor import LOWER, Tensor, rat_einsum
from frame_soliton.soliton.variants import SolitonVariant, TensorChoice

logger = logging.getLogger(__name__)

LAMBDA = "lambda_shifted"
MU = "mu"


class SolutionStatus(str, Enum):
    UNIQUE = "unique"
    PARAMETRIC = "parametric"
    NONE = "none"


_STATUS_FROM_SOLVER = {
    SolveStatus.UNIQUE: SolutionStatus.UNIQUE,
    SolveStatus.UNDERDETERMINED: SolutionStatus.PARAMETRIC,
    SolveStatus.INCONSISTENT: SolutionStatus.NONE,
}


def _pressure_term(dim: int) -> str:
    return f"(1/2)(p + 2/{dim})"


@dataclass(frozen=True)
class SolitonSolution:
    """Solved soliton constants for one variant."""

    variant: str
    status: SolutionStatus
    dim: int
    conformal: bool
    eta_term: bool
    lambda_shifted: Optional[Fraction] = None
    mu: Optional[Fraction] = None
    free: Tuple[str, ...] = ()
    einstein_checks: List[IdentityCheck] = field(default_factory=list)
    star: bool = False
    sasakian: bool = False

    @property
    def lambda_affine_in_p(self) -> Optional[Tuple[Fraction, Fraction]]:
        """``(constant, p_coefficient)`` with ``lambda = constant + coeff * p``."""
        if self.lambda_shifted is None:
            return None
        if not self.conformal:
            return self.lambda_shifted, Fraction(0)
        return self.lambda_shifted + Fraction(1, self.dim), Fraction(1, 2)

    @property
    def constraint_check(self) -> Optional[bool]:
        """``lambda~ + mu = 0``, i.e. ``lambda + mu = (1/2)(p + 2/dim)``.

        Only meaningful for the *-conformal eta variant on a Sasakian
        manifold; ``None`` everywhere else.
        """
        if self.status is not SolutionStatus.UNIQUE:
            return None
        if not (self.eta_term and self.conformal and self.star and self.sasakian):
            return None
        return self.lambda_shifted + self.mu == 0

    @property
    def nature(self) -> Optional[str]:
        """Shrinking, steady or expanding by the sign of ``lambda``."""
        if self.status is not SolutionStatus.UNIQUE:
            return None
        if self.conformal:
            return "depends on p"
        if self.lambda_shifted < 0:
            return "shrinking"
        if self.lambda_shifted == 0:
            return "steady"
        return "expanding"

    def lambda_text(self) -> str:
        """``lambda`` as text: ``5 + (1/2)(p + 2/5)`` or ``-1``."""
        if self.lambda_shifted is None:
            return "undetermined"
        if not self.conformal:
            return format_rat(self.lambda_shifted)
        if self.lambda_shifted == 0:
            return _pressure_term(self.dim)
        return f"{format_rat(self.lambda_shifted)} + {_pressure_term(self.dim)}"

    def constraint_text(self) -> str:
        return f"λ + μ = {_pressure_term(self.dim)}"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"variant": self.variant, "status": self.status.value}
        if self.lambda_shifted is not None:
            data["lambda_shifted"] = format_rat(self.lambda_shifted)
            data["mu"] = format_rat(self.mu if self.mu is not None else 0)
            constant, coefficient = self.lambda_affine_in_p or (0, 0)
            data["lambda"] = {
                "text": self.lambda_text(),
                "constant": format_rat(constant),
                "p_coefficient": format_rat(coefficient),
            }
        if self.constraint_check is not None:
            data["constraint"] = {
                "text": self.constraint_text(),
                "satisfied": self.constraint_check,
            }
        if self.nature is not None:
            data["nature"] = self.nature
        if self.free:
            data["free"] = list(self.free)
        if self.einstein_checks:
            data["einstein_checks"] = [c.to_dict() for c in self.einstein_checks]
        return data


def _potential(m: FrameManifold, variant: SolitonVariant) -> np.ndarray:
    if variant.potential is None:
        return m.xi_vector
    return np.asarray([Fraction(v) for v in variant.potential], dtype=object)


def _soliton_tensor(pack: CurvaturePack, variant: SolitonVariant) -> np.ndarray:
    if variant.tensor_choice is TensorChoice.STAR_RICCI:
        return pack.S_star
    return pack.S


def _fixed_part(
    m: FrameManifold, pack: CurvaturePack, conn: Connection, variant: SolitonVariant
) -> np.ndarray:
    """``L_V g + 2T``: the part of the residual not involving the unknowns."""
    lie = lie_derivative_metric(m, conn, _potential(m, variant)).components
    return lie + _soliton_tensor(pack, variant) * 2


def soliton_residual(
    m: FrameManifold,
    pack: CurvaturePack,
    conn: Connection,
    variant: SolitonVariant,
    lambda_shifted: Any,
    mu: Any,
) -> Tensor:
    """``L_V g + 2T + 2 lambda~ g + 2 mu eta (x) eta`` on every frame pair.

    The ``mu`` term is dropped for variants without an eta term.
    """
    components = _fixed_part(m, pack, conn, variant) + m.g * (
        2 * Fraction(lambda_shifted)
    )
    if variant.eta_term:
        components = components + m.eta_tensor_eta() * (2 * Fraction(mu))
    return Tensor(m.dim, (LOWER, LOWER), components)


def einstein_consistency(
    m: FrameManifold, pack: CurvaturePack, lambda_shifted: Fraction, mu: Fraction
) -> List[IdentityCheck]:
    """Ricci form implied by a *-soliton on a Sasakian manifold.

    ``S = (2n - 1 - lambda~) g - (mu - 1) eta (x) eta`` and
    ``S(X, xi) = 2n eta(X)``.
    """
    n2 = 2 * m.n
    expected = m.g * (n2 - 1 - lambda_shifted) - m.eta_tensor_eta() * (mu - 1)
    return [
        identity_check(
            "S = (2n-1-lambda~)g - (mu-1) eta (x) eta",
            pack.S,
            expected,
        ),
        identity_check(
            "S(X, xi) = 2n eta(X)",
            rat_einsum("ik,k->i", pack.S, m.xi_vector),
            m.eta_covector * n2,
        ),
    ]


def solve_soliton(
    m: FrameManifold,
    pack: CurvaturePack,
    conn: Connection,
    variant: SolitonVariant,
    sasakian: bool = False,
) -> SolitonSolution:
    """Solve the stacked residual equations exactly for ``lambda~`` (and ``mu``).

    Args:
        m: The manifold
        pack: Its curvature
        conn: Its connection
        variant: Which soliton equation
        sasakian: Whether ``m`` is Sasakian; enables the Einstein
            consistency checks for *-variants with an eta term and the
            ``lambda + mu`` constraint

    Returns:
        SolitonSolution with status ``unique``, ``parametric`` or ``none``
    """
    fixed = _fixed_part(m, pack, conn, variant)
    eta_eta = m.eta_tensor_eta()
    unknowns = [LAMBDA, MU] if variant.eta_term else [LAMBDA]
    rows = []
    for i in range(m.dim):
        for j in range(m.dim):
            coefficients = [2 * m.g[i, j]]
            if variant.eta_term:
                coefficients.append(2 * eta_eta[i, j])
            rows.append((coefficients, -fixed[i, j]))

    result = solve_exact(LinearSystem.build(unknowns, rows))
    status = _STATUS_FROM_SOLVER[result.status]
    lambda_shifted = mu = None
    if status is not SolutionStatus.NONE:
        lambda_shifted = result.assignment[LAMBDA]
        mu = result.assignment.get(MU, Fraction(0))

    checks: List[IdentityCheck] = []
    if (
        sasakian
        and status is SolutionStatus.UNIQUE
        and variant.eta_term
        and variant.tensor_choice is TensorChoice.STAR_RICCI
    ):
        checks = einstein_consistency(m, pack, lambda_shifted, mu)

    solution = SolitonSolution(
        variant=variant.name,
        status=status,
        dim=m.dim,
        conformal=variant.conformal,
        eta_term=variant.eta_term,
        lambda_shifted=lambda_shifted,
        mu=mu,
        free=result.free,
        einstein_checks=checks,
        star=variant.tensor_choice is TensorChoice.STAR_RICCI,
        sasakian=sasakian,
    )
    logger.info(
        f"{m.name} [{variant.name}]: {status.value}, "
        f"lambda~={lambda_shifted}, mu={mu}"
    )
    return solution


class EinsteinKind(str, Enum):
    EINSTEIN = "einstein"
    ETA_EINSTEIN = "eta_einstein"
    STAR_EINSTEIN = "star_einstein"
    STAR_ETA_EINSTEIN = "star_eta_einstein"
    NONE = "none"


@dataclass(frozen=True)
class EinsteinClass:
    """Fit ``T = alpha g + beta eta (x) eta`` for ``T = S`` or ``S*``."""

    kind: EinsteinKind
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.alpha is not None:
            data["alpha"] = format_rat(self.alpha)
        if self.beta is not None:
            data["beta"] = format_rat(self.beta)
        return data


def _fit(
    m: FrameManifold, T: np.ndarray, with_eta: bool
) -> Optional[Dict[str, Fraction]]:
    eta_eta = m.eta_tensor_eta()
    unknowns = ["alpha", "beta"] if with_eta else ["alpha"]
    rows = []
    for i in range(m.dim):
        for j in range(m.dim):
            coefficients = [m.g[i, j]] + ([eta_eta[i, j]] if with_eta else [])
            rows.append((coefficients, T[i, j]))
    result = solve_exact(LinearSystem.build(unknowns, rows))
    if result.status is not SolveStatus.UNIQUE:
        return None
    return result.assignment


def _classify(m: FrameManifold, T: np.ndarray, star: bool) -> EinsteinClass:
    plain = _fit(m, T, with_eta=False)
    if plain is not None:
        kind = EinsteinKind.STAR_EINSTEIN if star else EinsteinKind.EINSTEIN
        return EinsteinClass(kind, alpha=plain["alpha"])
    fitted = _fit(m, T, with_eta=True)
    if fitted is not None:
        kind = EinsteinKind.STAR_ETA_EINSTEIN if star else EinsteinKind.ETA_EINSTEIN
        return EinsteinClass(kind, alpha=fitted["alpha"], beta=fitted["beta"])
    return EinsteinClass(EinsteinKind.NONE)


def classify_einstein(
    m: FrameManifold, pack: CurvaturePack
) -> Tuple[EinsteinClass, EinsteinClass]:
    """Einstein-type class of ``S`` and of ``S*``, preferring ``beta = 0``."""
    return _classify(m, pack.S, star=False), _classify(m, pack.S_star, star=True)
