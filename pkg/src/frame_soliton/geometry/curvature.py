"""Levi-Civita connection and curvature of a frame manifold.

Index conventions (0-based):

- ``gamma[i, j, k]``: component ``k`` of ``nabla_{e_i} e_j``
- ``R[i, j, k, l]``: component ``l`` of ``R(e_i, e_j) e_k`` with
  ``R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]``
- ``S[j, k] = sum_i R[i, j, k, i]``
- ``Q[m, j]``: component ``m`` of ``Q(e_j)``, so ``S(X, Y) = g(QX, Y)``

All frame fields have constant components, so every frame derivative of a
component vanishes and the formulas reduce to finite sums.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from frame_soliton.exceptions import TensorError
from frame_soliton.geometry.manifold import FrameManifold
from frame_soliton.kernel.linear import inverse_matrix
from frame_soliton.kernel.tensor import LOWER, UPPER, Tensor, rat_einsum, to_rat_array

logger = logging.getLogger(__name__)

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Connection:
    """Christoffel coefficients of the frame: ``nabla_{e_i} e_j``."""

    gamma: Tensor

    @property
    def dim(self) -> int:
        return self.gamma.dim

    @property
    def components(self) -> np.ndarray:
        return self.gamma.components

    def nabla(self, i: int, j: int) -> np.ndarray:
        """Components of ``nabla_{e_i} e_j``."""
        return self.components[i, j, :]

    def derivative_of(self, vector: Any) -> np.ndarray:
        """``D[i, m]``: component ``m`` of ``nabla_{e_i} V`` for constant ``V``."""
        return rat_einsum("j,ijm->im", to_rat_array(vector), self.components)


@dataclass(frozen=True)
class CurvaturePack:
    """Riemann tensor and its Ricci-type contractions."""

    riemann: Tensor
    ricci: Tensor
    scalar: Fraction
    ricci_operator: Tensor
    star_ricci: Tensor

    @property
    def R(self) -> np.ndarray:
        return self.riemann.components

    @property
    def S(self) -> np.ndarray:
        return self.ricci.components

    @property
    def Q(self) -> np.ndarray:
        return self.ricci_operator.components

    @property
    def S_star(self) -> np.ndarray:
        return self.star_ricci.components


@dataclass(frozen=True)
class RicciDerivative:
    """Covariant derivative of the Ricci tensor and its cyclic sum.

    ``tensor[i, j, k] = (nabla_{e_i} S)(e_j, e_k)``.
    """

    tensor: Tensor
    cyclic: Tensor


def metric_inverse(m: FrameManifold) -> np.ndarray:
    """``g^{-1}`` of the frame metric."""
    inverse = inverse_matrix(m.g)
    if inverse is None:
        raise TensorError("Metric is not invertible", m.name)
    return inverse


def levi_civita(m: FrameManifold) -> Connection:
    """Levi-Civita connection from Koszul's formula.

    With constant metric components the formula reduces to
    ``2 g(nabla_{e_i} e_j, e_k) = -g(e_i, [e_j, e_k]) - g(e_j, [e_i, e_k])
    + g(e_k, [e_i, e_j])``.

    Args:
        m: The manifold

    Returns:
        The connection coefficients

    Raises:
        TensorError: If the metric is not invertible
    """
    ginv = metric_inverse(m)
    # bracket_low[i, j, k] = g(e_k, [e_i, e_j])
    bracket_low = rat_einsum("ijm,mk->ijk", m.C, m.g)
    koszul = (
        -rat_einsum("jki->ijk", bracket_low)
        - rat_einsum("ikj->ijk", bracket_low)
        + bracket_low
    ) * _HALF
    gamma = rat_einsum("ijk,kl->ijl", koszul, ginv)
    connection = Connection(Tensor(m.dim, (LOWER, LOWER, UPPER), gamma))
    logger.debug(
        f"Levi-Civita connection of {m.name}: "
        f"{sum(1 for _ in connection.gamma.nonzero_items())} nonzero coefficients"
    )
    return connection


def riemann(m: FrameManifold, conn: Connection) -> Tensor:
    """Riemann tensor ``R(e_i, e_j) e_k`` with the bracket term expanded."""
    gamma = conn.components
    components = (
        rat_einsum("jkm,iml->ijkl", gamma, gamma)
        - rat_einsum("ikm,jml->ijkl", gamma, gamma)
        - rat_einsum("ijm,mkl->ijkl", m.C, gamma)
    )
    return Tensor(m.dim, (LOWER, LOWER, LOWER, UPPER), components)


def ricci(m: FrameManifold, R: Tensor) -> tuple[Tensor, Fraction, Tensor]:
    """Ricci tensor, scalar curvature and Ricci operator.

    Returns:
        ``(S, r, Q)``
    """
    ginv = metric_inverse(m)
    S = rat_einsum("ijki->jk", R.components)
    Q = rat_einsum("jk,km->mj", S, ginv)
    r = Fraction(rat_einsum("jk,jk->", S, ginv)[()])
    return (
        Tensor(m.dim, (LOWER, LOWER), S),
        r,
        Tensor(m.dim, (UPPER, LOWER), Q),
    )


def star_ricci(m: FrameManifold, R: Tensor) -> Tensor:
    """``S*(X, Y)``: half the trace of ``Z -> phi R(X, phi Y) Z``."""
    phi = m.phi_matrix
    components = rat_einsum("ibkl,kl,bj->ij", R.components, phi, phi) * _HALF
    return Tensor(m.dim, (LOWER, LOWER), components)


def nabla_ricci(m: FrameManifold, conn: Connection, S: Tensor) -> RicciDerivative:
    """``(nabla_X S)(Y, Z)`` on the frame, plus its cyclic sum over ``(X, Y, Z)``."""
    gamma = conn.components
    derivative = -rat_einsum("ijm,mk->ijk", gamma, S.components) - rat_einsum(
        "ikm,jm->ijk", gamma, S.components
    )
    cyclic = (
        derivative
        + rat_einsum("jki->ijk", derivative)
        + rat_einsum("kij->ijk", derivative)
    )
    valence = (LOWER, LOWER, LOWER)
    return RicciDerivative(
        tensor=Tensor(m.dim, valence, derivative),
        cyclic=Tensor(m.dim, valence, cyclic),
    )


def lie_derivative_metric(
    m: FrameManifold, conn: Connection, vector: Sequence[Any]
) -> Tensor:
    """``(L_V g)(e_i, e_j) = g(nabla_{e_i} V, e_j) + g(e_i, nabla_{e_j} V)``."""
    derivative = conn.derivative_of(vector)
    components = rat_einsum("im,mj->ij", derivative, m.g) + rat_einsum(
        "im,jm->ij", m.g, derivative
    )
    return Tensor(m.dim, (LOWER, LOWER), components)


def compute_curvature(m: FrameManifold, conn: Connection) -> CurvaturePack:
    """Riemann, Ricci, scalar curvature, Ricci operator and *-Ricci in one pass."""
    R = riemann(m, conn)
    S, r, Q = ricci(m, R)
    pack = CurvaturePack(
        riemann=R,
        ricci=S,
        scalar=r,
        ricci_operator=Q,
        star_ricci=star_ricci(m, R),
    )
    logger.debug(f"Curvature of {m.name}: r = {r}, flat = {R.is_zero()}")
    return pack
