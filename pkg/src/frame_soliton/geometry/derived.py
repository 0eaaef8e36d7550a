"""Conharmonic, projective and pseudo-projective curvature, and the curvature
conditions evaluated along the Reeb field.

Every tensor here uses the Riemann layout: ``T[i, j, k, l]`` is component
``l`` of ``T(e_i, e_j) e_k``. Divisors use the manifold dimension.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, List, Optional

import numpy as np

from frame_soliton.exceptions import ParameterError
from frame_soliton.geometry.curvature import CurvaturePack, metric_inverse
from frame_soliton.geometry.manifold import FrameManifold
from frame_soliton.geometry.result import (
    ConditionReport,
    IdentityCheck,
    condition_report,
    identity_check,
    undefined_condition,
)
from frame_soliton.kernel.rational import format_rat, parse_rat
from frame_soliton.kernel.tensor import LOWER, UPPER, Tensor, rat_einsum

logger = logging.getLogger(__name__)

_RIEMANN_VALENCE = (LOWER, LOWER, LOWER, UPPER)

_MIN_DIMENSION = {"conharmonic": 3, "projective": 2, "pseudo-projective": 2}


@dataclass(frozen=True)
class PseudoProjectiveParams:
    """Constants ``a, b`` of the pseudo-projective tensor.

    ``r_override`` replaces the computed scalar curvature when set (for
    example ``-1`` for the conformal-flow normalisation).
    """

    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    r_override: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "a", parse_rat(self.a, "a"))
        object.__setattr__(self, "b", parse_rat(self.b, "b"))
        if self.r_override is not None:
            object.__setattr__(
                self, "r_override", parse_rat(self.r_override, "r_override")
            )
        if self.a == 0:
            raise ParameterError("Pseudo-projective constant a must be nonzero")
        if self.b == 0:
            raise ParameterError("Pseudo-projective constant b must be nonzero")

    def scalar(self, pack: CurvaturePack) -> Fraction:
        """Scalar curvature used in the tensor: the override or the computed one."""
        return self.r_override if self.r_override is not None else pack.scalar


class ConditionKind(str, Enum):
    """Curvature derivations evaluated along ``xi``."""

    R_XI_DOT_S = "R_xi_dot_S"
    S_XI_DOT_R = "S_xi_dot_R"
    PBAR_XI_DOT_S = "Pbar_xi_dot_S"


class FlatnessKind(str, Enum):
    CONHARMONIC = "conharmonic"
    PROJECTIVE = "projective"


def dimension_note(m: FrameManifold, tensor: str) -> Optional[str]:
    """Why ``tensor`` is undefined on ``m``, or ``None`` when it is defined."""
    minimum = _MIN_DIMENSION[tensor]
    if m.dim >= minimum:
        return None
    return f"{tensor} tensor needs dimension > {minimum - 1}; got dimension {m.dim}"


def _ricci_terms(m: FrameManifold, pack: CurvaturePack) -> np.ndarray:
    """``g(Y, Z)QX - g(X, Z)QY``."""
    return rat_einsum("jk,li->ijkl", m.g, pack.Q) - rat_einsum(
        "ik,lj->ijkl", m.g, pack.Q
    )


def _frame_terms(m: FrameManifold, bilinear: np.ndarray) -> np.ndarray:
    """``B(Y, Z)X - B(X, Z)Y`` for a bilinear form ``B``."""
    delta = Tensor.identity(m.dim).components
    return rat_einsum("jk,il->ijkl", bilinear, delta) - rat_einsum(
        "ik,jl->ijkl", bilinear, delta
    )


def conharmonic(m: FrameManifold, pack: CurvaturePack) -> Tensor:
    """Conharmonic curvature tensor ``H``.

    Raises:
        ParameterError: If ``dim <= 2``
    """
    if m.dim <= 2:
        raise ParameterError("Conharmonic tensor needs dimension > 2", f"dim={m.dim}")
    bracket = _ricci_terms(m, pack) + _frame_terms(m, pack.S)
    components = pack.R - bracket * Fraction(1, m.dim - 2)
    return Tensor(m.dim, _RIEMANN_VALENCE, components)


def projective(m: FrameManifold, pack: CurvaturePack) -> Tensor:
    """Projective curvature tensor ``P``.

    Raises:
        ParameterError: If ``dim <= 1``
    """
    if m.dim <= 1:
        raise ParameterError("Projective tensor needs dimension > 1", f"dim={m.dim}")
    components = pack.R - _ricci_terms(m, pack) * Fraction(1, m.dim - 1)
    return Tensor(m.dim, _RIEMANN_VALENCE, components)


def pseudo_projective_coefficient(
    m: FrameManifold, pack: CurvaturePack, params: PseudoProjectiveParams
) -> Fraction:
    """``(r / dim)(a / (dim - 1) + b)``, the scalar-curvature weight."""
    r = params.scalar(pack)
    return r / m.dim * (params.a / (m.dim - 1) + params.b)


def pseudo_projective(
    m: FrameManifold, pack: CurvaturePack, params: PseudoProjectiveParams
) -> Tensor:
    """Pseudo-projective curvature tensor ``P-bar``.

    ``a R(X,Y)Z + b[S(Y,Z)X - S(X,Z)Y]
    - (r/n)(a/(n-1) + b)[g(Y,Z)X - g(X,Z)Y]`` with ``n = dim``.
    """
    if m.dim <= 1:
        raise ParameterError(
            "Pseudo-projective tensor needs dimension > 1", f"dim={m.dim}"
        )
    weight = pseudo_projective_coefficient(m, pack, params)
    components = (
        pack.R * params.a
        + _frame_terms(m, pack.S) * params.b
        - _frame_terms(m, m.g) * weight
    )
    return Tensor(m.dim, _RIEMANN_VALENCE, components)


def _along_xi(m: FrameManifold, T: np.ndarray) -> np.ndarray:
    """``A[j, k, l]``: component ``l`` of ``T(xi, e_j) e_k``."""
    return rat_einsum("i,ijkl->jkl", m.xi_vector, T)


def _derivation_on_ricci(S: np.ndarray, A: np.ndarray) -> np.ndarray:
    """``S(A(X)Y, Z) + S(Y, A(X)Z)`` indexed ``[x, y, z]``."""
    return rat_einsum("jkl,lz->jkz", A, S) + rat_einsum("jzl,kl->jkz", A, S)


def ricci_derivation_on_riemann(m: FrameManifold, pack: CurvaturePack) -> np.ndarray:
    """Eight-term expression of ``S(xi, X) . R`` indexed ``[x, y, z, w, l]``.

    ``S(X, R(Y,Z)W)xi - S(xi, R(Y,Z)W)X + S(X,Y)R(xi,Z)W - S(xi,Y)R(X,Z)W
    + S(X,Z)R(Y,xi)W - S(xi,Z)R(Y,X)W + S(X,W)R(Y,Z)xi - S(xi,W)R(Y,Z)X``
    """
    R, S, xi = pack.R, pack.S, m.xi_vector
    delta = Tensor.identity(m.dim).components
    S_xi = rat_einsum("a,am->m", xi, S)
    R_xi_first = rat_einsum("a,azwl->zwl", xi, R)
    R_xi_second = rat_einsum("a,yawl->ywl", xi, R)
    R_xi_third = rat_einsum("a,yzal->yzl", xi, R)
    return (
        rat_einsum("xm,yzwm,l->xyzwl", S, R, xi)
        - rat_einsum("m,yzwm,xl->xyzwl", S_xi, R, delta)
        + rat_einsum("xy,zwl->xyzwl", S, R_xi_first)
        - rat_einsum("y,xzwl->xyzwl", S_xi, R)
        + rat_einsum("xz,ywl->xyzwl", S, R_xi_second)
        - rat_einsum("z,yxwl->xyzwl", S_xi, R)
        + rat_einsum("xw,yzl->xyzwl", S, R_xi_third)
        - rat_einsum("w,yzxl->xyzwl", S_xi, R)
    )


def pseudo_projective_branch(
    m: FrameManifold, pack: CurvaturePack, params: PseudoProjectiveParams
) -> Optional[Fraction]:
    """``a - (r/(2n+1))(a/(2n) + b)``: the factor multiplying ``mu - 1``.

    ``None`` on dimension 1, where the pseudo-projective tensor is undefined.
    """
    if dimension_note(m, "pseudo-projective") is not None:
        return None
    return params.a - pseudo_projective_coefficient(m, pack, params)


def derivation_condition(
    m: FrameManifold,
    pack: CurvaturePack,
    kind: ConditionKind,
    params: Optional[PseudoProjectiveParams] = None,
) -> ConditionReport:
    """Evaluate a curvature derivation condition on every frame tuple.

    Args:
        m: The manifold
        pack: Its curvature
        kind: Which condition to assemble
        params: Pseudo-projective constants, required for ``Pbar_xi_dot_S``

    Returns:
        ConditionReport; ``holds`` iff the condition tensor vanishes

    Raises:
        ParameterError: If ``params`` is missing for the pseudo-projective kind
    """
    kind = ConditionKind(kind)
    if kind is ConditionKind.R_XI_DOT_S:
        tensor = _derivation_on_ricci(pack.S, _along_xi(m, pack.R))
        report = condition_report(kind.value, tensor)
    elif kind is ConditionKind.S_XI_DOT_R:
        report = condition_report(kind.value, ricci_derivation_on_riemann(m, pack))
    else:
        if params is None:
            raise ParameterError(
                "Pseudo-projective parameters are required", kind.value
            )
        note = dimension_note(m, "pseudo-projective")
        if note is not None:
            logger.debug(f"{m.name}: {kind.value} undefined")
            return undefined_condition(kind.value, note)
        P_bar = pseudo_projective(m, pack, params).components
        tensor = _derivation_on_ricci(pack.S, _along_xi(m, P_bar))
        n2 = 2 * m.n
        branch = pseudo_projective_branch(m, pack, params)
        notes = [
            f"a = {format_rat(params.a)}, b = {format_rat(params.b)}, "
            f"r = {format_rat(params.scalar(pack))}"
        ]
        if params.r_override is not None:
            value = (n2 * (n2 + 1) + 1) * params.a + n2 * params.b
            notes.append(
                f"[2n(2n+1)+1]a + 2nb = {format_rat(value)} "
                f"under r = {format_rat(params.r_override)}"
            )
        report = condition_report(
            kind.value,
            tensor,
            constraint=f"a - (r/(2n+1))(a/(2n) + b) = {format_rat(branch)}",
            notes=notes,
        )
    logger.debug(f"{m.name}: {kind.value} holds={report.holds}")
    return report


def phi_projected(m: FrameManifold, T: np.ndarray) -> np.ndarray:
    """``g(T(phi e_i, phi e_j) phi e_k, phi e_l)`` indexed ``[i, j, k, l]``."""
    phi = m.phi_matrix
    lowered = rat_einsum("abcd,de->abce", T, m.g)
    lowered = rat_einsum("abce,el->abcl", lowered, phi)
    lowered = rat_einsum("abcl,ck->abkl", lowered, phi)
    lowered = rat_einsum("abkl,bj->ajkl", lowered, phi)
    return rat_einsum("ajkl,ai->ijkl", lowered, phi)


def contraction_identities(
    m: FrameManifold, pack: CurvaturePack
) -> List[IdentityCheck]:
    """Basis-sum identities behind the phi-flatness arguments.

    Sums over an orthonormal frame are taken with ``g^{ij}`` weights.
    """
    ginv = metric_inverse(m)
    phi = m.phi_matrix
    n2 = 2 * m.n
    g_phi = rat_einsum("ai,ab,bj->ij", phi, m.g, phi)
    S_phi = rat_einsum("ai,ab,bj->ij", phi, pack.S, phi)
    R_phi = phi_projected(m, pack.R)

    def scalar(value: Any) -> np.ndarray:
        return np.asarray(Fraction(value), dtype=object)

    return [
        identity_check(
            "sum g(phi e_i, phi e_i) = 2n",
            rat_einsum("ij,ij->", ginv, g_phi),
            scalar(n2),
        ),
        identity_check(
            "sum S(phi e_i, phi e_i) = r - 2n",
            rat_einsum("ij,ij->", ginv, S_phi),
            scalar(pack.scalar - n2),
        ),
        identity_check(
            "sum g(phi e_i, phi Z) g(phi Y, phi e_i) = g(phi Y, phi Z)",
            rat_einsum("ij,iz,yj->yz", ginv, g_phi, g_phi),
            g_phi,
        ),
        identity_check(
            "sum g(phi e_i, phi Z) S(phi Y, phi e_i) = S(phi Y, phi Z)",
            rat_einsum("ij,iz,yj->yz", ginv, g_phi, S_phi),
            S_phi,
        ),
        identity_check(
            "sum g(R(phi e_i, phi Y) phi Z, phi e_i) "
            "= S(phi Y, phi Z) - g(phi Y, phi Z)",
            rat_einsum("ij,iyzj->yz", ginv, R_phi),
            S_phi - g_phi,
        ),
    ]


def flatness_consequence(
    m: FrameManifold, pack: CurvaturePack, kind: FlatnessKind
) -> IdentityCheck:
    """Ricci form forced on the horizontal distribution by phi-flatness.

    Conharmonic: ``S(phi Y, phi Z) = (r - 1) g(phi Y, phi Z)``.
    Projective: ``S(phi Y, phi Z) = r/(2n+1) g(phi Y, phi Z)``.
    """
    phi = m.phi_matrix
    g_phi = rat_einsum("ai,ab,bj->ij", phi, m.g, phi)
    S_phi = rat_einsum("ai,ab,bj->ij", phi, pack.S, phi)
    if FlatnessKind(kind) is FlatnessKind.CONHARMONIC:
        return identity_check(
            "S(phi Y, phi Z) = (r - 1) g(phi Y, phi Z)",
            S_phi,
            g_phi * (pack.scalar - 1),
        )
    return identity_check(
        "S(phi Y, phi Z) = r/(2n+1) g(phi Y, phi Z)",
        S_phi,
        g_phi * (pack.scalar / m.dim),
    )


def phi_flatness(
    m: FrameManifold,
    pack: CurvaturePack,
    kind: FlatnessKind,
    sasakian: bool = True,
) -> ConditionReport:
    """phi-conharmonic or phi-projective flatness on every frame quadruple.

    Args:
        m: The manifold
        pack: Its curvature
        kind: ``conharmonic`` or ``projective``
        sasakian: Whether ``m`` is Sasakian; the contraction identities are
            only evaluated then

    Returns:
        ConditionReport with the contraction identities as details
        (undefined when the dimension is too small for the tensor)
    """
    kind = FlatnessKind(kind)
    note = dimension_note(m, kind.value)
    if note is not None:
        logger.debug(f"{m.name}: phi-{kind.value} flatness undefined")
        return undefined_condition(f"phi_{kind.value}_flat", note)
    if kind is FlatnessKind.CONHARMONIC:
        T = conharmonic(m, pack)
    else:
        T = projective(m, pack)
    notes = []
    if m.dim <= 3:
        notes.append(
            f"flatness is defined for dimension > 3; evaluated on dimension {m.dim}"
        )
    details = contraction_identities(m, pack) if sasakian else []
    report = condition_report(
        f"phi_{kind.value}_flat",
        phi_projected(m, T.components),
        details=details,
        notes=notes,
    )
    logger.debug(f"{m.name}: phi-{kind.value} flat={report.holds}")
    return report
