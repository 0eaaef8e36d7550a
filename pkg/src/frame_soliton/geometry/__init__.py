"""Frame manifolds, their connection and curvature, and derived tensors."""

from frame_soliton.geometry.curvature import (
    Connection,
    CurvaturePack,
    RicciDerivative,
    compute_curvature,
    levi_civita,
    lie_derivative_metric,
    nabla_ricci,
    ricci,
    riemann,
    star_ricci,
)
from frame_soliton.geometry.derived import (
    ConditionKind,
    FlatnessKind,
    PseudoProjectiveParams,
    conharmonic,
    derivation_condition,
    phi_flatness,
    projective,
    pseudo_projective,
)
from frame_soliton.geometry.identities import (
    SasakianSuite,
    classical_identity_suite,
    sasakian_identity_suite,
)
from frame_soliton.geometry.manifold import (
    FrameManifold,
    ReferenceValues,
    load_manifold,
    manifold_to_document,
    parse_manifold,
)
from frame_soliton.geometry.result import ConditionReport, IdentityCheck
from frame_soliton.geometry.structure import (
    StructureClass,
    StructureFlag,
    classify_contact,
    exterior_derivative_eta,
    nijenhuis,
    validate_almost_contact,
)

__all__ = [
    "ConditionKind",
    "ConditionReport",
    "Connection",
    "CurvaturePack",
    "FlatnessKind",
    "FrameManifold",
    "IdentityCheck",
    "PseudoProjectiveParams",
    "ReferenceValues",
    "RicciDerivative",
    "SasakianSuite",
    "StructureClass",
    "StructureFlag",
    "classical_identity_suite",
    "classify_contact",
    "compute_curvature",
    "conharmonic",
    "derivation_condition",
    "exterior_derivative_eta",
    "levi_civita",
    "lie_derivative_metric",
    "load_manifold",
    "manifold_to_document",
    "nabla_ricci",
    "nijenhuis",
    "parse_manifold",
    "phi_flatness",
    "projective",
    "pseudo_projective",
    "ricci",
    "riemann",
    "sasakian_identity_suite",
    "star_ricci",
    "validate_almost_contact",
]
