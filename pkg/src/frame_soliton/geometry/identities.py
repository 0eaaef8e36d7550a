"""Exact identity suites over every frame tuple.

The classical suite holds for any Levi-Civita connection; the Sasakian suite
holds on every manifold classified Sasakian. The constant-curvature form
``R(X, Y)Z = g(Y, Z)X - g(X, Z)Y`` is reported on its own and is never part
of the Sasakian verdict.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np

from frame_soliton.geometry.curvature import (
    Connection,
    CurvaturePack,
    lie_derivative_metric,
)
from frame_soliton.geometry.manifold import FrameManifold
from frame_soliton.geometry.result import IdentityCheck, identity_check
from frame_soliton.kernel.tensor import Tensor, rat_einsum

logger = logging.getLogger(__name__)


def lowered_riemann(m: FrameManifold, pack: CurvaturePack) -> np.ndarray:
    """``g(R(e_i, e_j) e_k, e_w)`` indexed ``[i, j, k, w]``."""
    return rat_einsum("ijkl,lw->ijkw", pack.R, m.g)


def constant_curvature_form(m: FrameManifold) -> np.ndarray:
    """Components of ``g(Y, Z)X - g(X, Z)Y`` in the Riemann layout."""
    delta = Tensor.identity(m.dim).components
    return rat_einsum("jk,il->ijkl", m.g, delta) - rat_einsum(
        "ik,jl->ijkl", m.g, delta
    )


def classical_identity_suite(
    m: FrameManifold, conn: Connection, pack: CurvaturePack
) -> List[IdentityCheck]:
    """Torsion, metric compatibility, Bianchi, curvature and Ricci symmetries."""
    gamma, R, S = conn.components, pack.R, pack.S
    R_low = lowered_riemann(m, pack)
    g_of_Q = rat_einsum("mj,mk->jk", pack.Q, m.g)

    checks = [
        identity_check(
            "torsion-free",
            gamma - rat_einsum("jik->ijk", gamma),
            m.C,
        ),
        identity_check(
            "metric compatibility",
            rat_einsum("kim,mj->kij", gamma, m.g)
            + rat_einsum("kjm,im->kij", gamma, m.g),
        ),
        identity_check(
            "first Bianchi identity",
            R + rat_einsum("jkil->ijkl", R) + rat_einsum("kijl->ijkl", R),
        ),
        identity_check(
            "R(X, Y) = -R(Y, X)",
            R_low,
            -rat_einsum("jikw->ijkw", R_low),
        ),
        identity_check(
            "g(R(X, Y)Z, W) = -g(R(X, Y)W, Z)",
            R_low,
            -rat_einsum("ijwk->ijkw", R_low),
        ),
        identity_check(
            "g(R(X, Y)Z, W) = g(R(Z, W)X, Y)",
            R_low,
            rat_einsum("kwij->ijkw", R_low),
        ),
        identity_check("Ricci symmetry", S, S.T),
        identity_check("S(X, Y) = g(QX, Y)", S, g_of_Q),
        identity_check(
            "r = trace Q",
            np.asarray(pack.scalar, dtype=object),
            rat_einsum("ii->", pack.Q),
        ),
    ]
    failed = [check.name for check in checks if not check.holds]
    if failed:
        logger.warning(f"{m.name}: classical identities failed: {failed}")
    return checks


@dataclass(frozen=True)
class SasakianSuite:
    """Sasakian identities plus the separately reported constant-curvature form."""

    checks: List[IdentityCheck]
    constant_curvature: IdentityCheck

    @property
    def all_hold(self) -> bool:
        return all(check.holds for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checks": [check.to_dict() for check in self.checks],
            "constant_curvature": self.constant_curvature.to_dict(),
        }


def sasakian_identity_suite(
    m: FrameManifold, conn: Connection, pack: CurvaturePack
) -> SasakianSuite:
    """Evaluate the Sasakian identities on all frame tuples.

    Args:
        m: A manifold classified Sasakian
        conn: Its Levi-Civita connection
        pack: Its curvature

    Returns:
        SasakianSuite with one IdentityCheck per identity
    """
    g, phi, xi, eta = m.g, m.phi_matrix, m.xi_vector, m.eta_covector
    R, S = pack.R, pack.S
    delta = Tensor.identity(m.dim).components
    n2 = 2 * m.n

    checks = [
        identity_check(
            "nabla_X xi = -phi X",
            conn.derivative_of(xi),
            -rat_einsum("mi->im", phi),
        ),
        identity_check(
            "R(X, Y)xi = eta(Y)X - eta(X)Y",
            rat_einsum("ijkl,k->ijl", R, xi),
            rat_einsum("j,il->ijl", eta, delta) - rat_einsum("i,jl->ijl", eta, delta),
        ),
        identity_check(
            "R(xi, X)Y = g(X, Y)xi - eta(Y)X",
            rat_einsum("i,ijkl->jkl", xi, R),
            rat_einsum("jk,l->jkl", g, xi) - rat_einsum("k,jl->jkl", eta, delta),
        ),
        identity_check(
            "eta(R(X, Y)Z) = g(Y, Z)eta(X) - g(X, Z)eta(Y)",
            rat_einsum("ijkl,l->ijk", R, eta),
            rat_einsum("jk,i->ijk", g, eta) - rat_einsum("ik,j->ijk", g, eta),
        ),
        identity_check(
            "(nabla_X eta)Y = -g(phi X, Y)",
            -rat_einsum("ijm,m->ij", conn.components, eta),
            -rat_einsum("ai,aj->ij", phi, g),
        ),
        identity_check(
            "L_xi g = 0",
            lie_derivative_metric(m, conn, xi).components,
        ),
        identity_check(
            "S(X, xi) = 2n eta(X)",
            rat_einsum("ik,k->i", S, xi),
            eta * n2,
        ),
        identity_check(
            "S* = S - (2n-1)g - eta (x) eta",
            pack.S_star,
            S - g * (n2 - 1) - m.eta_tensor_eta(),
        ),
    ]
    constant = identity_check(
        "R(X, Y)Z = g(Y, Z)X - g(X, Z)Y",
        R,
        constant_curvature_form(m),
    )
    failed = [check.name for check in checks if not check.holds]
    if failed:
        logger.warning(f"{m.name}: Sasakian identities failed: {failed}")
    return SasakianSuite(checks=checks, constant_curvature=constant)
