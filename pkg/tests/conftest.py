"""Shared pytest fixtures for frame_soliton tests."""

import os
import sys
from pathlib import Path
from typing import Callable, Tuple

import allure
import pytest
import toml

from frame_soliton.geometry.curvature import (
    Connection,
    CurvaturePack,
    compute_curvature,
    levi_civita,
)
from frame_soliton.geometry.manifold import FrameManifold
from frame_soliton.library import get_example

DEFAULT_CONFIG_PATH = (
    Path(__file__).parent.parent
    / "src"
    / "frame_soliton"
    / "assets"
    / "default_config.toml"
)


@pytest.fixture(autouse=True)
def allure_markers(request: pytest.FixtureRequest):
    """Automatically add test markers to Allure reports."""
    for marker in request.node.iter_markers():
        if marker.name in ("unit", "smoke"):
            allure.feature(marker.name.capitalize())


@pytest.fixture(autouse=True)
def allure_python_version_metadata(request: pytest.FixtureRequest) -> None:
    """Label each test in Allure with the Python version and its location.

    - parameter ``python_version`` (``ALLURE_PYTHON_VERSION`` or the running
      interpreter)
    - parent suite from the directories below ``tests``
    - suite from the Python version, sub-suite from the module name
    - feature from the first directory below ``unit``/``smoke`` or the file name

    Example:
        ``tests/unit/geometry/test_curvature.py`` gets parent suite
        ``unit.geometry``, sub-suite ``test_curvature`` and feature
        ``Geometry``.
    """
    python_version = os.getenv(
        "ALLURE_PYTHON_VERSION", f"{sys.version_info.major}.{sys.version_info.minor}"
    )
    label = f"Python {python_version}"

    module_name = "unknown_module"
    if hasattr(request, "node") and hasattr(request.node, "module"):
        module_name = request.node.module.__name__.split(".")[-1]

    dynamic = getattr(allure, "dynamic", None)
    if dynamic is not None and hasattr(dynamic, "parameter"):
        dynamic.parameter("python_version", label)

    test_path = Path(str(request.node.fspath))
    parts = test_path.parts
    if dynamic is not None and hasattr(dynamic, "parent_suite"):
        if "tests" in parts:
            tests_idx = parts.index("tests")
            if len(parts) > tests_idx + 1:
                dynamic.parent_suite(".".join(parts[tests_idx + 1 : -1]))
        else:
            dynamic.parent_suite("misc")

    if dynamic is not None and hasattr(dynamic, "suite"):
        dynamic.suite(label)
    if dynamic is not None and hasattr(dynamic, "sub_suite"):
        dynamic.sub_suite(module_name)

    if dynamic is None or not ("unit" in parts or "smoke" in parts):
        return
    kind_idx = parts.index("unit") if "unit" in parts else parts.index("smoke")
    feature_label = None
    if len(parts) > kind_idx + 2:
        feature_label = _FEATURE_LABELS.get(parts[kind_idx + 1])
    if feature_label is None:
        feature_label = next(
            (
                value
                for key, value in _FEATURE_LABELS.items()
                if key in test_path.stem
            ),
            "Misc",
        )
    dynamic.feature(feature_label)


@pytest.fixture(autouse=True)
def attach_logs_on_failure(request: pytest.FixtureRequest, caplog):
    """Attach the captured engine log to Allure when a test fails."""
    yield
    test_failed = hasattr(request.node, "rep_call") and request.node.rep_call.failed
    if test_failed and caplog.text:
        allure.attach(
            caplog.text,
            name="frame_soliton.log",
            attachment_type=allure.attachment_type.TEXT,
        )


@pytest.fixture
def allure_environment_properties():
    """Set up Allure environment properties."""
    if hasattr(allure, "dynamic") and hasattr(allure.dynamic, "environment"):
        allure.dynamic.environment(
            Python="3.10+", PyTest=pytest.__version__, OS="macOS/Linux/Windows"
        )


@pytest.fixture
def default_config_data() -> dict:
    """The packaged default_config.toml, parsed."""
    return toml.load(DEFAULT_CONFIG_PATH)


@pytest.fixture
def isolated_home(monkeypatch, tmp_path: Path) -> Path:
    """Point the home directory at ``tmp_path`` and silence r3a_logger."""
    monkeypatch.setattr("frame_soliton.cli.Path.home", lambda: tmp_path)
    monkeypatch.setattr(
        "frame_soliton.cli.initialize_logging", lambda *a, **kw: None
    )
    monkeypatch.setattr("frame_soliton.cli.get_current_logger", lambda: None)
    return tmp_path


@pytest.fixture
def heisenberg5() -> FrameManifold:
    return get_example("heisenberg5")


@pytest.fixture
def heisenberg3() -> FrameManifold:
    return get_example("heisenberg3")


@pytest.fixture
def sphere3() -> FrameManifold:
    return get_example("sphere3")


@pytest.fixture
def abelian5() -> FrameManifold:
    return get_example("abelian5")


@pytest.fixture
def geometry() -> Callable[[FrameManifold], Tuple[Connection, CurvaturePack]]:
    """Connection and curvature of a manifold."""

    def compute(m: FrameManifold) -> Tuple[Connection, CurvaturePack]:
        conn = levi_civita(m)
        return conn, compute_curvature(m, conn)

    return compute


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Capture test result for later use in fixtures."""
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


# Automatically assign Allure feature labels based on test file path
_FEATURE_LABELS = {
    "kernel": "Kernel",
    "geometry": "Geometry",
    "soliton": "Soliton",
    "theorems": "Theorems",
    "cli": "CLI",
    "config": "Config",
    "library": "Library",
    "report": "Report",
    "utils": "Utils",
}
