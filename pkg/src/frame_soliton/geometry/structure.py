"""Almost-contact, contact, K-contact and Sasakian classification."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from frame_soliton.geometry.curvature import Connection, lie_derivative_metric
from frame_soliton.geometry.manifold import FrameManifold, frame_name
from frame_soliton.geometry.result import IdentityCheck, identity_check
from frame_soliton.kernel.rational import format_rat
from frame_soliton.kernel.tensor import LOWER, UPPER, Tensor, rat_einsum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StructureFlag:
    """One classification flag with the checks that decided it."""

    name: str
    passed: bool
    witness: Optional[str] = None
    checks: Tuple[IdentityCheck, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"passed": self.passed}
        if self.witness is not None:
            data["witness"] = self.witness
        if self.checks:
            data["checks"] = [check.to_dict() for check in self.checks]
        return data


def _flag(
    name: str,
    checks: List[IdentityCheck],
    requires: Optional[StructureFlag] = None,
) -> StructureFlag:
    failed = next((check for check in checks if not check.holds), None)
    if failed is not None:
        return StructureFlag(
            name, False, f"{failed.name}: {failed.witness}", tuple(checks)
        )
    if requires is not None and not requires.passed:
        return StructureFlag(name, False, f"requires {requires.name}", tuple(checks))
    return StructureFlag(name, True, None, tuple(checks))


@dataclass(frozen=True)
class StructureClass:
    """Classification flags of the almost-contact structure.

    Flags that were not evaluated are ``None``. Implications
    sasakian => contact_metric => almost_contact_metric and
    k_contact => almost_contact_metric hold by construction.
    """

    almost_contact_metric: StructureFlag
    contact_metric: Optional[StructureFlag] = None
    k_contact: Optional[StructureFlag] = None
    normal: Optional[StructureFlag] = None
    sasakian: Optional[StructureFlag] = None
    notes: List[str] = field(default_factory=list)

    def flags(self) -> List[StructureFlag]:
        return [
            flag
            for flag in (
                self.almost_contact_metric,
                self.contact_metric,
                self.k_contact,
                self.normal,
                self.sasakian,
            )
            if flag is not None
        ]

    @property
    def is_sasakian(self) -> bool:
        return self.sasakian is not None and self.sasakian.passed

    def to_dict(self) -> Dict[str, Any]:
        return {flag.name: flag.to_dict() for flag in self.flags()}


def _vector_witness(template: str):
    def describe(index: Tuple[int, ...], value: Fraction) -> str:
        names = [frame_name(i) for i in index]
        return template.format(*names, value=format_rat(value))

    return describe


def almost_contact_checks(m: FrameManifold) -> List[IdentityCheck]:
    """Every defining identity of an almost contact metric structure."""
    dim = m.dim
    g, phi, xi, eta = m.g, m.phi_matrix, m.xi_vector, m.eta_covector
    identity = Tensor.identity(dim).components
    xi_eta = rat_einsum("a,j->aj", xi, eta)

    phi_squared = rat_einsum("ab,bj->aj", phi, phi)
    eta_xi = rat_einsum("i,i->", eta, xi)
    eta_phi = rat_einsum("a,aj->j", eta, phi)
    phi_xi = rat_einsum("aj,j->a", phi, xi)
    compatible = rat_einsum("ai,ab,bj->ij", phi, g, phi)
    g_phi = rat_einsum("ia,aj->ij", g, phi)
    phi_g = rat_einsum("ai,aj->ij", phi, g)
    g_xi = rat_einsum("ij,j->i", g, xi)

    return [
        identity_check(
            "phi^2 = -I + xi (x) eta",
            phi_squared,
            -identity + xi_eta,
            _vector_witness(
                "phi^2({1}) != -{1} + eta({1}) xi in component {0} "
                "(difference {value})"
            ),
        ),
        identity_check(
            "eta(xi) = 1",
            eta_xi,
            np.asarray(Fraction(1), dtype=object),
            lambda index, value: f"eta(xi) - 1 = {format_rat(value)}",
        ),
        identity_check(
            "eta o phi = 0",
            eta_phi,
            describe=_vector_witness("eta(phi {0}) = {value}"),
        ),
        identity_check(
            "phi xi = 0",
            phi_xi,
            describe=_vector_witness("component {0} of phi xi is {value}"),
        ),
        identity_check(
            "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)",
            compatible,
            g - m.eta_tensor_eta(),
            _vector_witness("at ({0}, {1}) the two sides differ by {value}"),
        ),
        identity_check(
            "g(X, phi Y) = -g(phi X, Y)",
            g_phi,
            -phi_g,
            _vector_witness("at ({0}, {1}) the two sides differ by {value}"),
        ),
        identity_check(
            "g(X, xi) = eta(X)",
            g_xi,
            eta,
            _vector_witness("g({0}, xi) - eta({0}) = {value}"),
        ),
    ]


def validate_almost_contact(m: FrameManifold) -> StructureClass:
    """Check the almost contact metric identities only.

    Args:
        m: The manifold

    Returns:
        StructureClass with just ``almost_contact_metric`` evaluated
    """
    flag = _flag("almost_contact_metric", almost_contact_checks(m))
    logger.debug(f"{m.name}: almost_contact_metric={flag.passed}")
    return StructureClass(almost_contact_metric=flag)


def exterior_derivative_eta(m: FrameManifold) -> Tensor:
    """``d eta(e_i, e_j) = -1/2 eta([e_i, e_j])`` (constant components)."""
    components = rat_einsum("ijk,k->ij", m.C, m.eta_covector) * Fraction(-1, 2)
    return Tensor(m.dim, (LOWER, LOWER), components)


def nijenhuis(m: FrameManifold) -> Tensor:
    """``[phi, phi](e_i, e_j)``, slots (lower, lower, upper).

    ``phi^2 [X, Y] + [phi X, phi Y] - phi [phi X, Y] - phi [X, phi Y]``
    expanded bilinearly over the structure constants.
    """
    phi, C = m.phi_matrix, m.C
    phi_squared = rat_einsum("ab,bj->aj", phi, phi)
    components = (
        rat_einsum("ka,ija->ijk", phi_squared, C)
        + rat_einsum("ai,bj,abk->ijk", phi, phi, C)
        - rat_einsum("km,ai,ajm->ijk", phi, phi, C)
        - rat_einsum("km,bj,ibm->ijk", phi, phi, C)
    )
    return Tensor(m.dim, (LOWER, LOWER, UPPER), components)


def classify_contact(m: FrameManifold, conn: Connection) -> StructureClass:
    """Full classification up to Sasakian.

    Args:
        m: The manifold
        conn: Its Levi-Civita connection

    Returns:
        StructureClass with every flag evaluated
    """
    almost = _flag("almost_contact_metric", almost_contact_checks(m))

    d_eta = exterior_derivative_eta(m).components
    g_phi = rat_einsum("ia,aj->ij", m.g, m.phi_matrix)
    contact = _flag(
        "contact_metric",
        [
            identity_check(
                "d eta(X, Y) = g(X, phi Y)",
                d_eta,
                g_phi,
                _vector_witness("at ({0}, {1}) the two sides differ by {value}"),
            )
        ],
        requires=almost,
    )

    killing = lie_derivative_metric(m, conn, m.xi_vector).components
    k_contact = _flag(
        "k_contact",
        [
            identity_check(
                "L_xi g = 0",
                killing,
                describe=_vector_witness("(L_xi g)({0}, {1}) = {value}"),
            )
        ],
        requires=almost,
    )

    normality = rat_einsum("ij,k->ijk", d_eta, m.xi_vector) * 2 + nijenhuis(
        m
    ).components
    normal = _flag(
        "normal",
        [
            identity_check(
                "2 d eta(X, Y) xi + [phi, phi](X, Y) = 0",
                normality,
                describe=_vector_witness(
                    "component {2} at ({0}, {1}) is {value}"
                ),
            )
        ],
        requires=almost,
    )

    sasakian = _flag("sasakian", [], requires=contact)
    if sasakian.passed and not normal.passed:
        sasakian = StructureFlag("sasakian", False, "requires normal")

    result = StructureClass(
        almost_contact_metric=almost,
        contact_metric=contact,
        k_contact=k_contact,
        normal=normal,
        sasakian=sasakian,
    )
    logger.info(
        f"{m.name}: "
        + ", ".join(f"{flag.name}={flag.passed}" for flag in result.flags())
    )
    return result
