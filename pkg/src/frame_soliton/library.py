"""Builtin example manifolds shipped as package assets."""

import json
import logging
from dataclasses import dataclass
from importlib import resources
from typing import Any, Dict, List

import tomli_w
import yaml

from frame_soliton.exceptions import ExampleNotFoundError, ManifoldFormatError
from frame_soliton.geometry.manifold import (
    FrameManifold,
    manifold_to_document,
    parse_manifold,
)

logger = logging.getLogger(__name__)

_ASSET_DIRECTORY = "assets/manifolds"

EXPORT_FORMATS = ("json", "toml", "yaml")


@dataclass(frozen=True)
class BuiltinExample:
    name: str
    dimension: int
    description: str


def _asset_names() -> List[str]:
    directory = resources.files("frame_soliton").joinpath(_ASSET_DIRECTORY)
    return sorted(
        entry.name[: -len(".json")]
        for entry in directory.iterdir()
        if entry.name.endswith(".json")
    )


def _read_asset(name: str) -> Dict[str, Any]:
    if name not in _asset_names():
        raise ExampleNotFoundError(
            f"Unknown builtin example: {name}",
            f"choose from {', '.join(_asset_names())}",
        )
    with (
        resources.files("frame_soliton")
        .joinpath(f"{_ASSET_DIRECTORY}/{name}.json")
        .open("rb") as f
    ):
        return json.loads(f.read().decode("utf-8"))


def builtin_examples() -> List[BuiltinExample]:
    """Name, dimension and description of every shipped manifold."""
    examples = []
    for name in _asset_names():
        document = _read_asset(name)
        examples.append(
            BuiltinExample(
                name=name,
                dimension=document["dimension"],
                description=document.get("description", ""),
            )
        )
    return examples


def get_example(name: str) -> FrameManifold:
    """Parse and validate a builtin manifold.

    Raises:
        ExampleNotFoundError: If no example has that name
    """
    logger.debug(f"Loading builtin example {name}")
    return parse_manifold(_read_asset(name))


def export_example(name: str, fmt: str = "json") -> str:
    """Render a builtin manifold as a JSON, TOML or YAML document.

    The document is re-encoded from the parsed manifold, so the metric and
    eta defaults are written out explicitly.

    Args:
        name: Builtin example name
        fmt: One of ``json``, ``toml``, ``yaml``

    Returns:
        Document text accepted by ``load_manifold`` for the same format

    Raises:
        ExampleNotFoundError: If no example has that name
        ManifoldFormatError: If the format is not supported
    """
    if fmt not in EXPORT_FORMATS:
        raise ManifoldFormatError(
            f"Unsupported export format: {fmt}",
            f"choose from {', '.join(EXPORT_FORMATS)}",
        )
    manifold = get_example(name)
    if fmt == "toml":
        # TOML arrays must be homogeneous
        return tomli_w.dumps(manifold_to_document(manifold, strings_only=True))
    document = manifold_to_document(manifold)
    if fmt == "yaml":
        return yaml.safe_dump(document, sort_keys=False, allow_unicode=True)
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
