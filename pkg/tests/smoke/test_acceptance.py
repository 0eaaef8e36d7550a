"""End-to-end reproduction checks on the builtin manifolds."""

from fractions import Fraction

import numpy as np
import pytest
from typer.testing import CliRunner

from frame_soliton.cli import app
from frame_soliton.geometry.curvature import compute_curvature, levi_civita
from frame_soliton.geometry.derived import (
    ConditionKind,
    FlatnessKind,
    PseudoProjectiveParams,
    conharmonic,
    contraction_identities,
    derivation_condition,
    phi_flatness,
    projective,
    pseudo_projective,
)
from frame_soliton.geometry.identities import classical_identity_suite
from frame_soliton.geometry.structure import (
    classify_contact,
    exterior_derivative_eta,
    nijenhuis,
)
from frame_soliton.kernel.tensor import rat_einsum
from frame_soliton.library import builtin_examples, export_example, get_example
from frame_soliton.report import build_report
from frame_soliton.soliton.solver import SolutionStatus, solve_soliton
from frame_soliton.soliton.theorems import HOLDS, verify_theorems
from frame_soliton.soliton.variants import VariantFactory

BUILTINS = [example.name for example in builtin_examples()]
PARAMETER_PAIRS = [(1, 1), (1, 2), (2, 1)]


def _pipeline(m):
    conn = levi_civita(m)
    return conn, compute_curvature(m, conn)


@pytest.mark.smoke
def test_heisenberg5_structure(heisenberg5):
    conn, _ = _pipeline(heisenberg5)
    assert classify_contact(heisenberg5, conn).is_sasakian

    d_eta = exterior_derivative_eta(heisenberg5).components
    g_phi = rat_einsum("ia,aj->ij", heisenberg5.g, heisenberg5.phi_matrix)
    assert d_eta[0, 1] == g_phi[0, 1] == -1
    assert (d_eta == g_phi).all()

    normality = (
        rat_einsum("ij,k->ijk", d_eta, heisenberg5.xi_vector) * 2
        + nijenhuis(heisenberg5).components
    )
    assert all(not any(normality[i, j]) for i in range(5) for j in range(5))


@pytest.mark.smoke
def test_heisenberg5_connection_and_discrepancies(heisenberg5):
    report = build_report(heisenberg5)
    assert report.connection.nabla(0, 1).tolist() == [0, 0, 1, 0, 0]
    assert report.connection.nabla(3, 2).tolist() == [0, 0, 0, 0, -1]

    published = heisenberg5.reference.connection
    consistent = [
        pair
        for pair, components in published.items()
        if list(components) == report.connection.nabla(*pair).tolist()
    ]
    assert len(consistent) == len(published) == 9
    assert len(list(report.connection.gamma.nonzero_items())) == 12

    connection_rows = [
        (d.index, d.engine, d.reference)
        for d in report.discrepancies
        if d.table == "connection"
    ]
    assert connection_rows == [
        ((2, 3), "-e5", "0"),
        ((4, 2), "e4", "0"),
        ((4, 3), "-e3", "0"),
    ]


@pytest.mark.smoke
def test_heisenberg5_ricci(heisenberg5):
    _, pack = _pipeline(heisenberg5)
    assert pack.S[0, 0] == -2
    assert pack.S[2, 2] == 4
    assert pack.scalar == -4
    S_xi = rat_einsum("ik,k->i", pack.S, heisenberg5.xi_vector)
    assert S_xi.tolist() == (heisenberg5.eta_covector * 4).tolist()
    # engine values where the published table is inconsistent
    assert [pack.S[k, k] for k in (1, 3, 4)] == [-2, -2, -2]


@pytest.mark.smoke
@pytest.mark.parametrize("name", ["heisenberg5", "sphere3"])
def test_star_ricci_trace_matches_closed_form(name):
    m = get_example(name)
    _, pack = _pipeline(m)
    n2 = 2 * m.n
    closed_form = pack.S - m.g * (n2 - 1) - m.eta_tensor_eta()
    assert pack.S_star.tolist() == closed_form.tolist()


@pytest.mark.smoke
def test_heisenberg5_soliton_headline(heisenberg5):
    conn, pack = _pipeline(heisenberg5)
    solution = solve_soliton(
        heisenberg5,
        pack,
        conn,
        VariantFactory.create("star-conformal-eta"),
        sasakian=True,
    )
    assert solution.status is SolutionStatus.UNIQUE
    assert (solution.lambda_shifted, solution.mu) == (5, -5)
    assert solution.constraint_check is True
    assert solution.lambda_text() == "5 + (1/2)(p + 2/5)"


@pytest.mark.smoke
@pytest.mark.parametrize("name", ["heisenberg5", "sphere3"])
def test_cyclic_ricci_on_every_triple(name):
    m = get_example(name)
    conn, pack = _pipeline(m)
    report = verify_theorems(m, pack, conn, PseudoProjectiveParams())
    assert report.entry("cyclic-ricci").verdict == HOLDS


@pytest.mark.smoke
def test_sphere3_ricci_semisymmetric_instance(sphere3):
    conn, pack = _pipeline(sphere3)
    assert derivation_condition(sphere3, pack, ConditionKind.R_XI_DOT_S).holds
    report = verify_theorems(sphere3, pack, conn, PseudoProjectiveParams())
    entry = report.entry("r-xi-dot-s")
    assert entry.hypothesis_holds and entry.conclusion_holds
    assert entry.expected_mu == 1
    assert report.entry("r-xi-dot-s-einstein").verdict == HOLDS
    assert pack.S.tolist() == (sphere3.g * 2).tolist()

    solution = build_report(sphere3).solutions[-1]
    assert (solution.lambda_shifted, solution.mu) == (-1, 1)
    # lambda = (1/2)(p + 2/3) - 1 with n = 1
    constant, p_coefficient = solution.lambda_affine_in_p
    assert constant == Fraction(1, 3) - 1
    assert p_coefficient == Fraction(1, 2)


@pytest.mark.smoke
@pytest.mark.parametrize("name", BUILTINS)
def test_constraint_on_unique_sasakian_solutions(name):
    report = build_report(get_example(name))
    headline = report.solutions[-1]
    if not report.structure.is_sasakian or headline.status is not (
        SolutionStatus.UNIQUE
    ):
        pytest.skip(f"{name} has no unique star-conformal-eta solution")
    assert headline.lambda_shifted + headline.mu == 0


@pytest.mark.smoke
@pytest.mark.parametrize("name", BUILTINS)
def test_classical_suite_on_builtins(name):
    m = get_example(name)
    conn, pack = _pipeline(m)
    assert all(check.holds for check in classical_identity_suite(m, conn, pack))


@pytest.mark.smoke
@pytest.mark.parametrize("a,b", PARAMETER_PAIRS + [(Fraction(3, 2), -1)])
def test_flat_oracle(abelian5, a, b):
    conn, pack = _pipeline(abelian5)
    assert conn.gamma.is_zero()
    for tensor in (pack.riemann, pack.ricci, pack.star_ricci):
        assert tensor.is_zero()
    assert conharmonic(abelian5, pack).is_zero()
    assert projective(abelian5, pack).is_zero()
    assert pseudo_projective(abelian5, pack, PseudoProjectiveParams(a, b)).is_zero()


@pytest.mark.smoke
@pytest.mark.parametrize("name", ["heisenberg5", "sphere3"])
def test_contraction_identities(name):
    m = get_example(name)
    _, pack = _pipeline(m)
    checks = contraction_identities(m, pack)
    assert len(checks) == 5
    assert all(check.holds for check in checks)


@pytest.mark.smoke
def test_sphere3_phi_projectively_flat(sphere3):
    conn, pack = _pipeline(sphere3)
    assert projective(sphere3, pack).is_zero()
    assert phi_flatness(sphere3, pack, FlatnessKind.PROJECTIVE).holds
    report = verify_theorems(sphere3, pack, conn, PseudoProjectiveParams())
    entry = report.entry("phi-projective-flat")
    assert (entry.hypothesis_holds, entry.conclusion_holds) == (True, True)
    assert entry.expected_mu == 1


@pytest.mark.smoke
@pytest.mark.parametrize("a,b", PARAMETER_PAIRS)
@pytest.mark.parametrize("name", BUILTINS)
def test_no_theorem_violations(name, a, b):
    m = get_example(name)
    conn, pack = _pipeline(m)
    report = verify_theorems(m, pack, conn, PseudoProjectiveParams(a, b))
    assert report.violations == []


@pytest.mark.smoke
@pytest.mark.parametrize("name", BUILTINS)
def test_check_theorems_command_on_builtins(isolated_home, name):
    path = isolated_home / f"{name}.yaml"
    path.write_text(export_example(name, "yaml"), encoding="utf-8")
    result = CliRunner().invoke(app, ["check-theorems", str(path)])
    assert result.exit_code == 0
    assert "VIOLATION" not in result.output


@pytest.mark.smoke
def test_report_is_deterministic(heisenberg5):
    first = build_report(heisenberg5).to_dict()
    second = build_report(heisenberg5).to_dict()
    assert first == second
    assert np.array_equal(
        np.asarray(first["curvature"]["ricci"]),
        np.asarray(second["curvature"]["ricci"]),
    )
