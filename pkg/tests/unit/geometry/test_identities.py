"""Unit tests for geometry/identities.py."""

import pytest

from frame_soliton.geometry.identities import (
    classical_identity_suite,
    constant_curvature_form,
    lowered_riemann,
    sasakian_identity_suite,
)

BUILTINS = ["heisenberg5", "heisenberg3", "sphere3", "abelian5"]
SASAKIAN = ["heisenberg5", "heisenberg3", "sphere3"]


@pytest.mark.parametrize("name", BUILTINS)
@pytest.mark.unit
def test_classical_suite_holds_on_builtins(request, geometry, name):
    m = request.getfixturevalue(name)
    conn, pack = geometry(m)
    checks = classical_identity_suite(m, conn, pack)
    assert len(checks) == 9
    failed = [check.name for check in checks if not check.holds]
    assert failed == []


@pytest.mark.parametrize("name", SASAKIAN)
@pytest.mark.unit
def test_sasakian_suite_holds_on_sasakian_builtins(request, geometry, name):
    m = request.getfixturevalue(name)
    conn, pack = geometry(m)
    suite = sasakian_identity_suite(m, conn, pack)
    assert suite.all_hold, [c.to_dict() for c in suite.checks if not c.holds]


@pytest.mark.unit
def test_star_ricci_closed_form_on_heisenberg5(heisenberg5, geometry):
    conn, pack = geometry(heisenberg5)
    suite = sasakian_identity_suite(heisenberg5, conn, pack)
    closed_form = next(c for c in suite.checks if c.name.startswith("S* = S"))
    assert closed_form.holds


@pytest.mark.unit
def test_constant_curvature_is_reported_separately(heisenberg5, sphere3, geometry):
    conn, pack = geometry(sphere3)
    assert sasakian_identity_suite(sphere3, conn, pack).constant_curvature.holds

    conn, pack = geometry(heisenberg5)
    suite = sasakian_identity_suite(heisenberg5, conn, pack)
    assert suite.all_hold
    assert not suite.constant_curvature.holds
    assert suite.constant_curvature.witness_index is not None


@pytest.mark.unit
def test_sasakian_suite_fails_on_abelian5(abelian5, geometry, caplog):
    conn, pack = geometry(abelian5)
    suite = sasakian_identity_suite(abelian5, conn, pack)
    assert not suite.all_hold
    failing = next(c for c in suite.checks if not c.holds)
    assert failing.name == "nabla_X xi = -phi X"
    assert failing.witness is not None
    assert "Sasakian identities failed" in caplog.text


@pytest.mark.unit
def test_suite_to_dict(sphere3, geometry):
    conn, pack = geometry(sphere3)
    data = sasakian_identity_suite(sphere3, conn, pack).to_dict()
    assert len(data["checks"]) == 8
    assert data["constant_curvature"] == {
        "name": "R(X, Y)Z = g(Y, Z)X - g(X, Z)Y",
        "holds": True,
    }


@pytest.mark.unit
def test_lowered_riemann_and_constant_form_agree_on_sphere(sphere3, geometry):
    _, pack = geometry(sphere3)
    lowered = lowered_riemann(sphere3, pack)
    # g(R(e1, e2)e2, e1) is the sectional curvature of the (e1, e2) plane
    assert lowered[0, 1, 1, 0] == 1
    assert (pack.R == constant_curvature_form(sphere3)).all()
