"""Unit tests for soliton/solver.py."""

from fractions import Fraction

import pytest

from frame_soliton.geometry.curvature import compute_curvature, levi_civita
from frame_soliton.geometry.manifold import parse_manifold
from frame_soliton.soliton.solver import (
    EinsteinKind,
    SolutionStatus,
    classify_einstein,
    soliton_residual,
    solve_soliton,
)
from frame_soliton.soliton.variants import VariantFactory

ETA = EinsteinKind.ETA_EINSTEIN
STAR = EinsteinKind.STAR_EINSTEIN
STAR_ETA = EinsteinKind.STAR_ETA_EINSTEIN


def _solve(m, variant, sasakian=True, potential=None):
    conn = levi_civita(m)
    pack = compute_curvature(m, conn)
    return solve_soliton(
        m, pack, conn, VariantFactory.create(variant, potential), sasakian=sasakian
    )


@pytest.mark.unit
def test_heisenberg5_star_conformal_eta_headline(heisenberg5):
    solution = _solve(heisenberg5, "star-conformal-eta")
    assert solution.status is SolutionStatus.UNIQUE
    assert solution.lambda_shifted == 5
    assert solution.mu == -5
    assert solution.constraint_check is True
    assert solution.lambda_text() == "5 + (1/2)(p + 2/5)"
    assert solution.lambda_affine_in_p == (Fraction(26, 5), Fraction(1, 2))
    assert solution.nature == "depends on p"
    assert [check.holds for check in solution.einstein_checks] == [True, True]


@pytest.mark.unit
def test_residual_vanishes_only_at_the_solution(heisenberg5, geometry):
    conn, pack = geometry(heisenberg5)
    variant = VariantFactory.create("star-conformal-eta")
    assert soliton_residual(heisenberg5, pack, conn, variant, 5, -5).is_zero()
    assert not soliton_residual(heisenberg5, pack, conn, variant, 5, -4).is_zero()


@pytest.mark.parametrize(
    "variant,lambda_shifted,mu,nature,constraint",
    [
        ("eta-ricci", 2, -6, "expanding", None),
        ("conformal-eta-ricci", 2, -6, "depends on p", None),
        ("star-conformal-eta", 5, -5, "depends on p", True),
    ],
)
@pytest.mark.unit
def test_heisenberg5_unique_variants(
    heisenberg5, variant, lambda_shifted, mu, nature, constraint
):
    solution = _solve(heisenberg5, variant)
    assert solution.status is SolutionStatus.UNIQUE
    assert (solution.lambda_shifted, solution.mu) == (lambda_shifted, mu)
    assert solution.nature == nature
    assert solution.constraint_check is constraint


@pytest.mark.parametrize("variant", ["ricci", "star-ricci"])
@pytest.mark.unit
def test_heisenberg5_variants_without_solution(heisenberg5, variant):
    solution = _solve(heisenberg5, variant)
    assert solution.status is SolutionStatus.NONE
    assert solution.lambda_shifted is None
    assert solution.nature is None
    assert solution.constraint_check is None
    assert solution.lambda_text() == "undetermined"
    assert solution.to_dict() == {"variant": variant, "status": "none"}


@pytest.mark.unit
def test_sphere3_solutions(sphere3):
    star = _solve(sphere3, "star-conformal-eta")
    assert (star.lambda_shifted, star.mu) == (-1, 1)

    ricci = _solve(sphere3, "ricci")
    assert ricci.lambda_shifted == -2
    assert ricci.mu == 0
    assert ricci.nature == "shrinking"
    assert ricci.lambda_text() == "-2"
    assert ricci.lambda_affine_in_p == (Fraction(-2), Fraction(0))

    assert _solve(sphere3, "star-ricci").status is SolutionStatus.NONE


@pytest.mark.unit
def test_heisenberg3_star_soliton(heisenberg3):
    solution = _solve(heisenberg3, "star-conformal-eta")
    assert (solution.lambda_shifted, solution.mu) == (3, -3)
    assert solution.constraint_check is True


@pytest.mark.unit
def test_abelian5_is_steady(abelian5):
    ricci = _solve(abelian5, "ricci", sasakian=False)
    assert ricci.lambda_shifted == 0
    assert ricci.nature == "steady"

    star = _solve(abelian5, "star-conformal-eta", sasakian=False)
    assert (star.lambda_shifted, star.mu) == (0, 0)
    assert star.constraint_check is None
    assert star.lambda_text() == "(1/2)(p + 2/5)"
    assert star.einstein_checks == []


@pytest.mark.unit
def test_non_killing_potential_has_no_solution(heisenberg3):
    potential = (Fraction(1), Fraction(0), Fraction(0))
    solution = _solve(heisenberg3, "star-conformal-eta", potential=potential)
    assert solution.status is SolutionStatus.NONE


@pytest.mark.unit
def test_dimension_one_is_parametric():
    m = parse_manifold(
        {"name": "line", "dimension": 1, "brackets": [], "phi": [[0]], "xi": [1]}
    )
    solution = _solve(m, "star-conformal-eta", sasakian=False)
    assert solution.status is SolutionStatus.PARAMETRIC
    assert solution.free == ("mu",)
    assert (solution.lambda_shifted, solution.mu) == (0, 0)
    assert solution.constraint_check is None
    assert solution.nature is None
    assert solution.to_dict()["free"] == ["mu"]


@pytest.mark.unit
def test_solution_to_dict(heisenberg5):
    data = _solve(heisenberg5, "star-conformal-eta").to_dict()
    assert data["variant"] == "star-conformal-eta"
    assert data["status"] == "unique"
    assert data["lambda_shifted"] == "5"
    assert data["mu"] == "-5"
    assert data["lambda"] == {
        "text": "5 + (1/2)(p + 2/5)",
        "constant": "26/5",
        "p_coefficient": "1/2",
    }
    assert data["constraint"] == {"text": "λ + μ = (1/2)(p + 2/5)", "satisfied": True}
    assert data["nature"] == "depends on p"
    assert len(data["einstein_checks"]) == 2


@pytest.mark.parametrize(
    "name,ricci_class,star_class",
    [
        ("heisenberg5", (ETA, -2, 6), (STAR_ETA, -5, 5)),
        ("heisenberg3", (ETA, -2, 4), (STAR_ETA, -3, 3)),
        ("sphere3", (EinsteinKind.EINSTEIN, 2, None), (STAR_ETA, 1, -1)),
        ("abelian5", (EinsteinKind.EINSTEIN, 0, None), (STAR, 0, None)),
    ],
)
@pytest.mark.unit
def test_classify_einstein(request, geometry, name, ricci_class, star_class):
    m = request.getfixturevalue(name)
    _, pack = geometry(m)
    ricci, star = classify_einstein(m, pack)
    assert (ricci.kind, ricci.alpha, ricci.beta) == ricci_class
    assert (star.kind, star.alpha, star.beta) == star_class


@pytest.mark.unit
def test_classify_einstein_none():
    m = parse_manifold(
        {
            "name": "h3-tilted",
            "dimension": 3,
            "brackets": [{"i": 1, "j": 2, "coeffs": {"3": 2}}],
            "phi": [[0, 0, 0], [0, 0, -1], [0, 1, 0]],
            "xi": [1, 0, 0],
        }
    )
    pack = compute_curvature(m, levi_civita(m))
    ricci, _ = classify_einstein(m, pack)
    assert ricci.kind is EinsteinKind.NONE
    assert ricci.to_dict() == {"kind": "none"}


@pytest.mark.unit
def test_constraint_needs_star_variant_on_sasakian(heisenberg5):
    assert _solve(heisenberg5, "star-conformal-eta").constraint_check is True
    assert _solve(heisenberg5, "conformal-eta-ricci").constraint_check is None
    unclassified = _solve(heisenberg5, "star-conformal-eta", sasakian=False)
    assert unclassified.constraint_check is None
    assert "constraint" not in unclassified.to_dict()
