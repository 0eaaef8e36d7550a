"""CLI commands on manifold files written from the builtin examples."""

import json
from pathlib import Path

import pytest
import yaml
from typer.testing import CliRunner

from frame_soliton.cli import EXIT_INPUT_ERROR, EXIT_VIOLATION, app
from frame_soliton.geometry.manifold import load_manifold
from frame_soliton.library import export_example
from frame_soliton.soliton.theorems import TheoremEntry, TheoremReport

runner = CliRunner()


def write_example(tmp_path: Path, name: str, fmt: str = "json") -> Path:
    path = tmp_path / f"{name}.{fmt}"
    path.write_text(export_example(name, fmt), encoding="utf-8")
    return path


def write_config(home: Path, text: str) -> None:
    config_dir = home / ".frame_soliton"
    config_dir.mkdir(exist_ok=True)
    (config_dir / "config.toml").write_text(text)


@pytest.mark.unit
def test_validate_prints_classification(isolated_home):
    path = write_example(isolated_home, "heisenberg5")
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 0
    assert "manifold: heisenberg5 (dimension 5)" in result.output
    assert "contact_metric: yes" in result.output
    assert "sasakian: yes" in result.output


@pytest.mark.unit
def test_validate_reports_failed_flag_witness(isolated_home):
    path = write_example(isolated_home, "abelian5", "yaml")
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 0
    assert "contact_metric: no" in result.output
    assert "sasakian: no (requires contact_metric)" in result.output


@pytest.mark.unit
def test_report_text(isolated_home):
    path = write_example(isolated_home, "heisenberg5", "toml")
    result = runner.invoke(app, ["report", str(path)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert "  ∇_e1 e2 = e3" in lines
    assert "  r = -4" in lines
    assert "  ∇_e3 e4: engine -e5, reference 0" in lines


@pytest.mark.unit
def test_report_json(isolated_home):
    path = write_example(isolated_home, "sphere3")
    result = runner.invoke(
        app, ["report", str(path), "--format", "json", "--r-override", "-1"]
    )
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["manifold"]["name"] == "sphere3"
    assert data["parameters"]["r_override"] == "-1"
    assert data["curvature"]["scalar"] == "6"
    assert data["discrepancies"] == []


@pytest.mark.unit
def test_soliton_default_variant(isolated_home):
    path = write_example(isolated_home, "heisenberg5")
    result = runner.invoke(app, ["soliton", str(path)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "unique: λ̃=5, μ=-5; λ+μ = (1/2)(p+2/5): satisfied"
    assert "λ = 5 + (1/2)(p + 2/5)" in lines
    assert "nature: depends on p" in lines
    assert "P̄ branch: a - (r/(2n+1))(a/(2n) + b) = 2" in lines


@pytest.mark.unit
def test_soliton_ricci_on_sphere(isolated_home):
    path = write_example(isolated_home, "sphere3")
    result = runner.invoke(app, ["soliton", str(path), "--variant", "ricci"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "unique: λ̃=-2, μ=0"
    assert "nature: shrinking" in lines


@pytest.mark.unit
def test_soliton_json_with_branch(isolated_home):
    path = write_example(isolated_home, "heisenberg5")
    result = runner.invoke(
        app, ["soliton", str(path), "--format", "json", "--a", "1", "--b", "2"]
    )
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["variant"] == "star-conformal-eta"
    assert (data["lambda_shifted"], data["mu"]) == ("5", "-5")
    assert data["pseudo_projective_branch"] == "14/5"


@pytest.mark.unit
def test_soliton_with_potential(isolated_home):
    path = write_example(isolated_home, "heisenberg3")
    result = runner.invoke(
        app, ["soliton", str(path), "--potential", "1,0,0", "-f", "json"]
    )
    assert result.exit_code == 0
    assert json.loads(result.stdout)["status"] == "none"


@pytest.mark.unit
@pytest.mark.parametrize(
    "extra",
    [
        ["--variant", "yamabe"],
        ["--potential", "1,0"],
        ["--potential", "1,x,0"],
        ["--a", "0"],
        ["--a", "1.5"],
    ],
)
def test_soliton_input_errors(isolated_home, extra):
    path = write_example(isolated_home, "sphere3")
    result = runner.invoke(app, ["soliton", str(path), *extra])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "Error:" in result.output


@pytest.mark.unit
def test_check_theorems_passes(isolated_home):
    path = write_example(isolated_home, "sphere3")
    result = runner.invoke(app, ["check-theorems", str(path)])
    assert result.exit_code == 0
    assert (
        "cyclic Ricci theorem [cyclic-ricci]: hypothesis HOLDS, conclusion HOLDS"
        in result.output
    )
    assert "VIOLATION" not in result.output


@pytest.mark.unit
def test_check_theorems_json(isolated_home):
    path = write_example(isolated_home, "heisenberg5")
    result = runner.invoke(app, ["check-theorems", str(path), "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["manifold"] == "heisenberg5"
    assert data["violations"] == 0


@pytest.mark.unit
def test_check_theorems_violation_exit_code(isolated_home, monkeypatch):
    violated = TheoremReport(
        manifold="sphere3",
        entries=[TheoremEntry("ricci-symmetric", "s", True, False)],
    )
    monkeypatch.setattr(
        "frame_soliton.cli.verify_theorems", lambda *args, **kwargs: violated
    )
    path = write_example(isolated_home, "sphere3")
    result = runner.invoke(app, ["check-theorems", str(path)])
    assert result.exit_code == EXIT_VIOLATION
    assert "ricci-symmetric: hypothesis HOLDS, conclusion FAILS VIOLATION" in (
        result.output
    )


@pytest.mark.unit
@pytest.mark.parametrize("command", ["validate", "report", "soliton"])
def test_missing_file_is_input_error(isolated_home, command):
    result = runner.invoke(app, [command, str(isolated_home / "absent.json")])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "not found" in result.output


@pytest.mark.unit
@pytest.mark.parametrize(
    "filename,content",
    [
        ("broken.json", b"{"),
        ("zero.json", b'{"name": "zero", "dimension": 0}'),
        ("notes.txt", b"dimension = 3"),
        ("utf16.json", b"\xff\xfe"),
        ("latin1.yaml", "name: caf\u00e9".encode("latin-1")),
    ],
)
def test_invalid_document_is_input_error(isolated_home, filename, content):
    path = isolated_home / filename
    path.write_bytes(content)
    result = runner.invoke(app, ["report", str(path)])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "Error:" in result.output


@pytest.mark.unit
def test_non_utf8_file_is_input_error(isolated_home):
    path = isolated_home / "binary.json"
    path.write_bytes(b"\xff\xfe")
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "is not UTF-8 text" in result.output


@pytest.mark.unit
def test_directory_is_input_error(isolated_home):
    path = isolated_home / "folder.json"
    path.mkdir()
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "Cannot read" in result.output


LINE = {"name": "line", "dimension": 1, "brackets": [], "phi": [[0]], "xi": [1]}


@pytest.mark.unit
def test_dimension_one_report(isolated_home):
    path = isolated_home / "line.json"
    path.write_text(json.dumps(LINE))
    result = runner.invoke(app, ["report", str(path)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert "manifold: line (dimension 1)" in lines
    assert "  Pbar_xi_dot_S: n/a" in lines
    assert "    pseudo-projective tensor needs dimension > 1; got dimension 1" in lines
    assert "  phi_conharmonic_flat: n/a" in lines
    assert "    conharmonic tensor needs dimension > 2; got dimension 1" in lines
    assert "  phi_projective_flat: n/a" in lines

    result = runner.invoke(app, ["report", str(path), "--format", "json"])
    assert result.exit_code == 0
    conditions = json.loads(result.stdout)["conditions"]
    assert [c["holds"] for c in conditions[2:]] == ["n/a", "n/a", "n/a"]


@pytest.mark.unit
def test_dimension_one_check_theorems(isolated_home):
    path = isolated_home / "line.json"
    path.write_text(json.dumps(LINE))
    result = runner.invoke(app, ["check-theorems", str(path)])
    assert result.exit_code == 0
    assert (
        "P̄·S theorem [pbar-xi-dot-s]: hypothesis FAILS, conclusion n/a"
        in result.output
    )
    assert "VIOLATION" not in result.output


@pytest.mark.unit
def test_dimension_one_soliton(isolated_home):
    path = isolated_home / "line.json"
    path.write_text(json.dumps(LINE))
    result = runner.invoke(app, ["soliton", str(path)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "parametric: λ̃=0, μ=0 (free: mu)"
    assert lines[-1] == "P̄ branch: n/a (pseudo-projective tensor needs dimension > 1)"

    result = runner.invoke(app, ["soliton", str(path), "--format", "json"])
    assert json.loads(result.stdout)["pseudo_projective_branch"] is None


@pytest.mark.unit
def test_examples_list(isolated_home):
    result = runner.invoke(app, ["examples", "list"])
    assert result.exit_code == 0
    for name in ("abelian5", "heisenberg3", "heisenberg5", "sphere3"):
        assert name in result.output


@pytest.mark.unit
def test_examples_export_stdout(isolated_home):
    result = runner.invoke(app, ["examples", "export", "sphere3"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["dimension"] == 3

    result = runner.invoke(app, ["examples", "export", "sphere3", "-f", "yaml"])
    assert result.exit_code == 0
    assert yaml.safe_load(result.stdout)["name"] == "sphere3"


@pytest.mark.unit
def test_examples_export_to_file(isolated_home):
    target = isolated_home / "h5.toml"
    result = runner.invoke(
        app, ["examples", "export", "heisenberg5", "-f", "toml", "-o", str(target)]
    )
    assert result.exit_code == 0
    assert "Wrote" in result.output
    assert load_manifold(target).dim == 5


@pytest.mark.unit
def test_examples_export_unknown(isolated_home):
    result = runner.invoke(app, ["examples", "export", "torus"])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "Unknown builtin example" in result.output


@pytest.mark.unit
def test_config_default_format(isolated_home):
    write_config(isolated_home, '[report]\ndefault_format = "json"\n')
    path = write_example(isolated_home, "sphere3")
    result = runner.invoke(app, ["check-theorems", str(path)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["manifold"] == "sphere3"


@pytest.mark.unit
def test_config_pseudo_projective_and_variant(isolated_home):
    write_config(
        isolated_home,
        '[soliton]\ndefault_variant = "eta-ricci"\n\n[pseudo_projective]\na = 2\n',
    )
    path = write_example(isolated_home, "heisenberg5")
    result = runner.invoke(app, ["soliton", str(path), "-f", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["variant"] == "eta-ricci"
    assert (data["lambda_shifted"], data["mu"]) == ("2", "-6")
    assert data["pseudo_projective_branch"] == "16/5"


@pytest.mark.unit
def test_flags_override_config(isolated_home):
    write_config(isolated_home, "[pseudo_projective]\na = 2\n")
    path = write_example(isolated_home, "heisenberg5")
    result = runner.invoke(app, ["soliton", str(path), "-f", "json", "--a", "1"])
    assert json.loads(result.stdout)["pseudo_projective_branch"] == "2"
