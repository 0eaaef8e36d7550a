"""Homogeneous frame manifolds and their documents.

A manifold is encoded as a metric Lie algebra: constant structure constants
``C[i, j, k] = C^k_{ij}`` with ``[e_i, e_j] = sum_k C^k_{ij} e_k``, a constant
metric, and constant almost-contact data ``(phi, xi, eta)`` on the frame.

Documents use 1-based indices; everything in memory is 0-based.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import toml
import yaml

from frame_soliton.exceptions import ManifoldFormatError, StructureError
from frame_soliton.kernel.linear import leading_principal_minors
from frame_soliton.kernel.rational import parse_rat, rat_to_document
from frame_soliton.kernel.tensor import LOWER, UPPER, Tensor, rat_einsum

logger = logging.getLogger(__name__)

_DOCUMENT_FIELDS = {
    "name",
    "dimension",
    "metric",
    "brackets",
    "phi",
    "xi",
    "eta",
    "description",
    "reference",
}
_REQUIRED_FIELDS = ("name", "dimension", "brackets", "phi", "xi")
_BRACKET_FIELDS = {"i", "j", "coeffs"}
_REFERENCE_FIELDS = {"source", "connection", "ricci"}
_RICCI_ENTRY_FIELDS = {"i", "j", "value"}

_SUFFIX_FORMATS = {
    ".json": "json",
    ".toml": "toml",
    ".yaml": "yaml",
    ".yml": "yaml",
}


def frame_name(index: int) -> str:
    """1-based frame vector name for a 0-based index: ``0 -> "e1"``."""
    return f"e{index + 1}"


@dataclass(frozen=True)
class ReferenceValues:
    """Published values a computed manifold is compared against.

    ``connection`` maps a 0-based pair ``(i, j)`` to the components of
    ``nabla_{e_i} e_j``; ``ricci`` maps ``(i, j)`` to ``S(e_i, e_j)``.
    """

    source: str = ""
    connection: Dict[Tuple[int, int], Tuple[Fraction, ...]] = field(
        default_factory=dict
    )
    ricci: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class FrameManifold:
    """A validated homogeneous frame manifold with almost-contact data."""

    name: str
    dim: int
    structure: Tensor
    """Structure constants, slots (lower, lower, upper)."""

    metric: Tensor
    phi: Tensor
    """``phi[a, j]`` is component ``a`` of ``phi(e_j)``, slots (upper, lower)."""

    xi: Tensor
    eta: Tensor
    description: str = ""
    reference: Optional[ReferenceValues] = None

    @property
    def n(self) -> int:
        """Half of ``dim - 1``: the manifold has dimension ``2n + 1``."""
        return (self.dim - 1) // 2

    @property
    def C(self) -> np.ndarray:
        return self.structure.components

    @property
    def g(self) -> np.ndarray:
        return self.metric.components

    @property
    def phi_matrix(self) -> np.ndarray:
        return self.phi.components

    @property
    def xi_vector(self) -> np.ndarray:
        return self.xi.components

    @property
    def eta_covector(self) -> np.ndarray:
        return self.eta.components

    def eta_tensor_eta(self) -> np.ndarray:
        """``eta (x) eta`` as a dim x dim array."""
        return rat_einsum("i,j->ij", self.eta_covector, self.eta_covector)

    def bracket(self, i: int, j: int) -> np.ndarray:
        """Components of ``[e_i, e_j]``."""
        return self.C[i, j, :]

    def nonzero_brackets(self) -> List[Tuple[int, int, Dict[int, Fraction]]]:
        """``(i, j, {k: c})`` for every nonzero bracket with ``i < j``."""
        entries = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coeffs = {k: v for k, v in enumerate(self.C[i, j, :]) if v != 0}
                if coeffs:
                    entries.append((i, j, coeffs))
        return entries

    def permuted(self, perm: Sequence[int]) -> "FrameManifold":
        """Rename the frame: new ``e_{perm[a]}`` is old ``e_a``.

        Args:
            perm: A permutation of ``range(dim)``

        Returns:
            The same structure expressed in the relabelled frame
        """
        if sorted(perm) != list(range(self.dim)):
            raise StructureError("Not a permutation of the frame", f"{list(perm)}")
        inverse = [0] * self.dim
        for old, new in enumerate(perm):
            inverse[new] = old
        idx = np.asarray(inverse)
        return FrameManifold(
            name=self.name,
            dim=self.dim,
            structure=Tensor(
                self.dim, self.structure.valence, self.C[np.ix_(idx, idx, idx)]
            ),
            metric=Tensor(self.dim, self.metric.valence, self.g[np.ix_(idx, idx)]),
            phi=Tensor(self.dim, self.phi.valence, self.phi_matrix[np.ix_(idx, idx)]),
            xi=Tensor(self.dim, self.xi.valence, self.xi_vector[idx]),
            eta=Tensor(self.dim, self.eta.valence, self.eta_covector[idx]),
            description=self.description,
        )


def _require_mapping(value: Any, location: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise ManifoldFormatError("Expected an object", location)
    return value


def _check_fields(
    value: Mapping[str, Any], allowed: set, location: str, required: Sequence[str] = ()
) -> None:
    unknown = sorted(str(key) for key in value if key not in allowed)
    if unknown:
        raise ManifoldFormatError(
            f"Unknown field(s): {', '.join(unknown)}", location or "document"
        )
    for name in required:
        if name not in value:
            prefix = f"{location}." if location else ""
            raise ManifoldFormatError("Missing required field", f"{prefix}{name}")


def _parse_index(value: Any, dim: int, location: str) -> int:
    """Parse a 1-based frame index (int or digit string) into a 0-based one."""
    if isinstance(value, bool):
        raise ManifoldFormatError("Index must be an integer", location)
    if isinstance(value, str) and value.strip().isdigit():
        value = int(value)
    if not isinstance(value, int):
        raise ManifoldFormatError(f"Index must be an integer, got {value!r}", location)
    if not 1 <= value <= dim:
        raise ManifoldFormatError(f"Index {value} outside 1..{dim}", location)
    return value - 1


def _parse_vector(value: Any, dim: int, location: str) -> List[Fraction]:
    if not isinstance(value, list) or len(value) != dim:
        raise ManifoldFormatError(f"Expected a list of {dim} rationals", location)
    return [parse_rat(item, f"{location}[{k}]") for k, item in enumerate(value)]


def _parse_matrix(value: Any, dim: int, location: str) -> List[List[Fraction]]:
    if not isinstance(value, list) or len(value) != dim:
        raise ManifoldFormatError(f"Expected a {dim}x{dim} array", location)
    return [_parse_vector(row, dim, f"{location}[{r}]") for r, row in enumerate(value)]


def _parse_coeffs(value: Any, dim: int, location: str) -> List[Fraction]:
    coeffs = _require_mapping(value, location)
    components = [Fraction(0)] * dim
    for key, raw in coeffs.items():
        k = _parse_index(key, dim, f"{location}.{key}")
        components[k] = parse_rat(raw, f"{location}.{key}")
    return components


def _parse_brackets(value: Any, dim: int) -> np.ndarray:
    if not isinstance(value, list):
        raise ManifoldFormatError("Expected a list of bracket entries", "brackets")

    declared: Dict[Tuple[int, int], Tuple[List[Fraction], str]] = {}
    for number, raw_entry in enumerate(value):
        location = f"brackets[{number}]"
        entry = _require_mapping(raw_entry, location)
        _check_fields(entry, _BRACKET_FIELDS, location, ("i", "j", "coeffs"))
        i = _parse_index(entry["i"], dim, f"{location}.i")
        j = _parse_index(entry["j"], dim, f"{location}.j")
        coeffs = _parse_coeffs(entry["coeffs"], dim, f"{location}.coeffs")
        if (i, j) in declared:
            raise ManifoldFormatError(
                f"Duplicate bracket [{frame_name(i)},{frame_name(j)}]", location
            )
        if i == j and any(coeffs):
            raise StructureError(
                f"Antisymmetry violated: [{frame_name(i)},{frame_name(i)}] must vanish",
                location,
            )
        declared[(i, j)] = (coeffs, location)

    C = np.full((dim, dim, dim), Fraction(0), dtype=object)
    for (i, j), (coeffs, location) in declared.items():
        C[i, j, :] = coeffs
        mirror = declared.get((j, i))
        if mirror is None:
            C[j, i, :] = [-c for c in coeffs]
        elif any(a != -b for a, b in zip(coeffs, mirror[0])):
            raise StructureError(
                f"Antisymmetry violated: [{frame_name(i)},{frame_name(j)}] and "
                f"[{frame_name(j)},{frame_name(i)}] are not opposite",
                f"{location} vs {mirror[1]}",
            )
    return C


def jacobi_defect(C: np.ndarray) -> Tensor:
    """Cyclic sum ``[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]``.

    Returns:
        Tensor indexed ``[i, j, l, k]`` holding component ``k`` of the sum
    """
    dim = C.shape[0]
    total = (
        rat_einsum("ijm,mlk->ijlk", C, C)
        + rat_einsum("jlm,mik->ijlk", C, C)
        + rat_einsum("lim,mjk->ijlk", C, C)
    )
    return Tensor(dim, (LOWER, LOWER, LOWER, UPPER), total)


def _check_jacobi(C: np.ndarray) -> None:
    witness = jacobi_defect(C).first_nonzero()
    if witness is not None:
        (i, j, l, k), value = witness
        raise StructureError(
            "Jacobi identity violated",
            f"triple ({frame_name(i)}, {frame_name(j)}, {frame_name(l)}): "
            f"component {frame_name(k)} of the cyclic sum is {value}",
        )


def _check_metric(g: np.ndarray) -> None:
    dim = g.shape[0]
    for i in range(dim):
        for j in range(i + 1, dim):
            if g[i, j] != g[j, i]:
                raise StructureError(
                    "Metric is not symmetric",
                    f"metric[{i + 1}][{j + 1}] = {g[i, j]} but "
                    f"metric[{j + 1}][{i + 1}] = {g[j, i]}",
                )
    for k, minor in enumerate(leading_principal_minors(g), start=1):
        if minor <= 0:
            raise StructureError(
                "Metric is not positive-definite",
                f"leading principal minor of order {k} is {minor}",
            )


def _parse_reference(value: Any, dim: int) -> ReferenceValues:
    reference = _require_mapping(value, "reference")
    _check_fields(reference, _REFERENCE_FIELDS, "reference")

    source = reference.get("source", "")
    if not isinstance(source, str):
        raise ManifoldFormatError("Expected text", "reference.source")

    connection: Dict[Tuple[int, int], Tuple[Fraction, ...]] = {}
    raw_connection = reference.get("connection", [])
    if not isinstance(raw_connection, list):
        raise ManifoldFormatError("Expected a list", "reference.connection")
    for number, raw_entry in enumerate(raw_connection):
        location = f"reference.connection[{number}]"
        entry = _require_mapping(raw_entry, location)
        _check_fields(entry, _BRACKET_FIELDS, location, ("i", "j", "coeffs"))
        i = _parse_index(entry["i"], dim, f"{location}.i")
        j = _parse_index(entry["j"], dim, f"{location}.j")
        connection[(i, j)] = tuple(
            _parse_coeffs(entry["coeffs"], dim, f"{location}.coeffs")
        )

    ricci: Dict[Tuple[int, int], Fraction] = {}
    raw_ricci = reference.get("ricci", [])
    if not isinstance(raw_ricci, list):
        raise ManifoldFormatError("Expected a list", "reference.ricci")
    for number, raw_entry in enumerate(raw_ricci):
        location = f"reference.ricci[{number}]"
        entry = _require_mapping(raw_entry, location)
        _check_fields(entry, _RICCI_ENTRY_FIELDS, location, ("i", "j", "value"))
        i = _parse_index(entry["i"], dim, f"{location}.i")
        j = _parse_index(entry["j"], dim, f"{location}.j")
        ricci[(i, j)] = parse_rat(entry["value"], f"{location}.value")

    return ReferenceValues(source=source, connection=connection, ricci=ricci)


def parse_manifold(document: Any) -> FrameManifold:
    """Validate a manifold document and build a FrameManifold.

    Args:
        document: Parsed document content (mapping of top-level fields)

    Returns:
        The validated manifold with defaults filled in

    Raises:
        ManifoldFormatError: Unknown or missing fields, wrong shapes, bad
            indices
        RationalFormatError: Malformed rationals
        StructureError: Even dimension, antisymmetry or Jacobi violation,
            non-symmetric or non-positive-definite metric, eta inconsistent
            with the metric
    """
    data = _require_mapping(document, "document")
    _check_fields(data, _DOCUMENT_FIELDS, "", _REQUIRED_FIELDS)

    name = data["name"]
    if not isinstance(name, str) or not name:
        raise ManifoldFormatError("Name must be non-empty text", "name")

    dim = data["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim <= 0:
        raise ManifoldFormatError(
            f"Dimension must be a positive integer, got {dim!r}", "dimension"
        )
    if dim % 2 == 0:
        raise StructureError(f"Dimension must be odd, got {dim}", "dimension")

    description = data.get("description", "")
    if not isinstance(description, str):
        raise ManifoldFormatError("Expected text", "description")

    C = _parse_brackets(data["brackets"], dim)
    _check_jacobi(C)

    if "metric" in data:
        g = np.asarray(_parse_matrix(data["metric"], dim, "metric"), dtype=object)
    else:
        g = Tensor.identity(dim).components
    _check_metric(g)

    phi = _parse_matrix(data["phi"], dim, "phi")
    xi = _parse_vector(data["xi"], dim, "xi")
    eta_from_metric = rat_einsum("ij,j->i", g, np.asarray(xi, dtype=object))
    if "eta" in data:
        eta = np.asarray(_parse_vector(data["eta"], dim, "eta"), dtype=object)
        for k in range(dim):
            if eta[k] != eta_from_metric[k]:
                raise StructureError(
                    "eta disagrees with g(., xi)",
                    f"eta[{k}] = {eta[k]} but g({frame_name(k)}, xi) = "
                    f"{eta_from_metric[k]}",
                )
    else:
        eta = eta_from_metric

    reference = None
    if "reference" in data:
        reference = _parse_reference(data["reference"], dim)

    manifold = FrameManifold(
        name=name,
        dim=dim,
        structure=Tensor(dim, (LOWER, LOWER, UPPER), C),
        metric=Tensor(dim, (LOWER, LOWER), g),
        phi=Tensor(dim, (UPPER, LOWER), phi),
        xi=Tensor(dim, (UPPER,), xi),
        eta=Tensor(dim, (LOWER,), eta),
        description=description,
        reference=reference,
    )
    logger.debug(
        f"Parsed manifold {name}: dim={dim}, "
        f"{len(manifold.nonzero_brackets())} nonzero brackets"
    )
    return manifold


def manifold_to_document(
    manifold: FrameManifold, strings_only: bool = False
) -> Dict[str, Any]:
    """Encode a manifold as a document that :func:`parse_manifold` accepts.

    Args:
        manifold: The manifold to encode
        strings_only: Render every rational as a string (TOML arrays must
            be homogeneous)

    Returns:
        A plain mapping ready for JSON, TOML or YAML serialisation
    """

    def encode(value: Fraction) -> Any:
        return str(value) if strings_only else rat_to_document(value)

    def encode_coeffs(components: Sequence[Fraction]) -> Dict[str, Any]:
        return {str(k + 1): encode(v) for k, v in enumerate(components) if v != 0}

    document: Dict[str, Any] = {
        "name": manifold.name,
        "dimension": manifold.dim,
    }
    if manifold.description:
        document["description"] = manifold.description
    document["metric"] = [[encode(v) for v in row] for row in manifold.g.tolist()]
    document["brackets"] = [
        {"i": i + 1, "j": j + 1, "coeffs": encode_coeffs(manifold.bracket(i, j))}
        for i, j, _ in manifold.nonzero_brackets()
    ]
    document["phi"] = [[encode(v) for v in row] for row in manifold.phi_matrix.tolist()]
    document["xi"] = [encode(v) for v in manifold.xi_vector.tolist()]
    document["eta"] = [encode(v) for v in manifold.eta_covector.tolist()]

    reference = manifold.reference
    if reference is not None:
        encoded: Dict[str, Any] = {}
        if reference.source:
            encoded["source"] = reference.source
        if reference.connection:
            encoded["connection"] = [
                {"i": i + 1, "j": j + 1, "coeffs": encode_coeffs(components)}
                for (i, j), components in sorted(reference.connection.items())
            ]
        if reference.ricci:
            encoded["ricci"] = [
                {"i": i + 1, "j": j + 1, "value": encode(value)}
                for (i, j), value in sorted(reference.ricci.items())
            ]
        document["reference"] = encoded
    return document


def document_format(path: Path) -> str:
    """Document format implied by the file extension."""
    suffix = path.suffix.lower()
    if suffix not in _SUFFIX_FORMATS:
        raise ManifoldFormatError(
            f"Unsupported manifold file extension {suffix!r}",
            "expected .json, .toml, .yaml or .yml",
        )
    return _SUFFIX_FORMATS[suffix]


def read_document(path: Path) -> Any:
    """Read a manifold document from disk without validating it.

    Raises:
        FileNotFoundError: If the file does not exist
        ManifoldFormatError: If the file cannot be read as UTF-8 text or
            cannot be decoded
    """
    kind = document_format(path)
    if not path.exists():
        raise FileNotFoundError(f"Manifold file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ManifoldFormatError(f"{path} is not UTF-8 text", str(e)) from e
    except OSError as e:
        raise ManifoldFormatError(f"Cannot read {path}", str(e)) from e
    try:
        if kind == "json":
            return json.loads(text)
        if kind == "toml":
            return toml.loads(text)
        return yaml.safe_load(text)
    except (json.JSONDecodeError, toml.TomlDecodeError, yaml.YAMLError) as e:
        raise ManifoldFormatError(f"Cannot decode {kind} document", str(e)) from e


def load_manifold(path: Path) -> FrameManifold:
    """Read and validate a manifold file (JSON, TOML or YAML by extension)."""
    logger.info(f"Loading manifold from {path}")
    return parse_manifold(read_document(path))
