"""Dense small tensors of exact rationals with valence bookkeeping.

Components are stored in a read-only numpy object array of ``Fraction``.
Indices are 0-based internally; reports translate them to 1-based ``e_i``
names. Slot kinds are ``UPPER`` (contravariant) or ``LOWER`` (covariant) and
index order is significant: nothing is ever symmetrized implicitly.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Iterator, Optional, Sequence, Tuple

import numpy as np

from frame_soliton.exceptions import TensorError
from frame_soliton.kernel.linear import inverse_matrix

logger = logging.getLogger(__name__)

UPPER = "upper"
LOWER = "lower"

_SLOT_KINDS = (UPPER, LOWER)
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def to_rat_array(values: Any, shape: Optional[Tuple[int, ...]] = None) -> np.ndarray:
    """Convert nested sequences or an array into an object array of Fraction.

    Args:
        values: Nested lists, a numpy array or a single scalar
        shape: Optional expected shape

    Returns:
        A fresh, writable object array

    Raises:
        TensorError: If a float is found or the shape does not match
    """
    source = np.asarray(values, dtype=object)
    if shape is not None and source.shape != shape:
        raise TensorError(
            "Component array has the wrong shape",
            f"expected {shape}, got {source.shape}",
        )
    result = np.empty(source.shape, dtype=object)
    for index in np.ndindex(source.shape):
        value = source[index]
        if isinstance(value, (float, bool)):
            raise TensorError(
                f"Inexact or boolean component {value!r}", f"index {index}"
            )
        result[index] = Fraction(value)
    return result


def rat_einsum(subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """Exact ``einsum`` over Fraction object arrays, always returning an array."""
    result = np.einsum(subscripts, *operands)
    return to_rat_array(result)


@dataclass(frozen=True, eq=False)
class Tensor:
    """Dense multi-index array of rationals with declared slot kinds."""

    dim: int
    valence: Tuple[str, ...]
    components: np.ndarray

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise TensorError("Tensor dimension must be positive", f"dim={self.dim}")
        valence = tuple(self.valence)
        for position, kind in enumerate(valence):
            if kind not in _SLOT_KINDS:
                raise TensorError(f"Unknown slot kind {kind!r}", f"slot {position}")
        shape = (self.dim,) * len(valence)
        components = to_rat_array(self.components, shape)
        components.setflags(write=False)
        object.__setattr__(self, "valence", valence)
        object.__setattr__(self, "components", components)

    @classmethod
    def zeros(cls, dim: int, valence: Sequence[str]) -> "Tensor":
        """Zero tensor of the given valence."""
        shape = (dim,) * len(valence)
        return cls(dim, tuple(valence), np.full(shape, Fraction(0), dtype=object))

    @classmethod
    def identity(cls, dim: int) -> "Tensor":
        """Identity endomorphism as a (1,1)-tensor, slots (upper, lower)."""
        array = np.full((dim, dim), Fraction(0), dtype=object)
        for i in range(dim):
            array[i, i] = Fraction(1)
        return cls(dim, (UPPER, LOWER), array)

    @classmethod
    def scalar(cls, dim: int, value: Any) -> "Tensor":
        """Rank-0 tensor holding a single rational."""
        return cls(dim, (), np.asarray(Fraction(value), dtype=object))

    @property
    def rank(self) -> int:
        return len(self.valence)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.components.shape

    def __getitem__(self, index: Any) -> Fraction:
        return self.components[index]

    def value(self) -> Fraction:
        """The single component of a rank-0 tensor."""
        if self.rank != 0:
            raise TensorError(
                "value() is only defined for scalars", f"rank={self.rank}"
            )
        return self.components[()]

    def _check_compatible(self, other: "Tensor") -> None:
        if self.dim != other.dim or self.valence != other.valence:
            raise TensorError(
                "Tensors are not compatible",
                f"{self.dim}{self.valence} vs {other.dim}{other.valence}",
            )

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other)
        return Tensor(self.dim, self.valence, self.components + other.components)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other)
        return Tensor(self.dim, self.valence, self.components - other.components)

    def __neg__(self) -> "Tensor":
        return Tensor(self.dim, self.valence, -self.components)

    def __mul__(self, factor: Any) -> "Tensor":
        if isinstance(factor, Tensor):
            return NotImplemented
        return Tensor(self.dim, self.valence, self.components * Fraction(factor))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.valence == other.valence
            and bool(np.all(self.components == other.components))
        )

    __hash__ = None  # type: ignore[assignment]

    def transpose(self, axes: Sequence[int]) -> "Tensor":
        """Reorder slots; result slot ``n`` is input slot ``axes[n]``."""
        valence = tuple(self.valence[axis] for axis in axes)
        return Tensor(self.dim, valence, np.transpose(self.components, axes))

    def nonzero_items(self) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
        """Yield ``(index, value)`` for nonzero components in lexicographic order."""
        for index in product(range(self.dim), repeat=self.rank):
            value = self.components[index]
            if value != 0:
                yield index, value

    def first_nonzero(self) -> Optional[Tuple[Tuple[int, ...], Fraction]]:
        return next(self.nonzero_items(), None)

    def is_zero(self) -> bool:
        return self.first_nonzero() is None

    def to_nested(self) -> Any:
        """Components as nested lists of Fraction."""
        return self.components.tolist()


def contract(
    t: Tensor, slot_a: int, slot_b: int, metric: Optional[Tensor] = None
) -> Tensor:
    """Contract two slots of a tensor.

    A mixed (upper, lower) pair is traced directly. A pair of equal kind is
    paired through the metric: two lower slots through ``g^{-1}``, two upper
    slots through ``g``.

    Args:
        t: Tensor to contract
        slot_a: First slot (0-based)
        slot_b: Second slot (0-based)
        metric: Metric ``g`` as a (0,2)-tensor, required for equal kinds

    Returns:
        Tensor whose rank is reduced by two

    Raises:
        TensorError: If a slot is out of range, the slots coincide, a metric
            is required but absent, or the metric is not invertible
    """
    for slot in (slot_a, slot_b):
        if not 0 <= slot < t.rank:
            raise TensorError("Slot out of range", f"slot {slot} of rank {t.rank}")
    if slot_a == slot_b:
        raise TensorError("Cannot contract a slot with itself", f"slot {slot_a}")

    letters = list(_LETTERS[: t.rank])
    remaining = [pos for pos in range(t.rank) if pos not in (slot_a, slot_b)]
    output = "".join(letters[pos] for pos in remaining)
    valence = tuple(t.valence[pos] for pos in remaining)

    if t.valence[slot_a] != t.valence[slot_b]:
        letters[slot_b] = letters[slot_a]
        components = rat_einsum(f"{''.join(letters)}->{output}", t.components)
        return Tensor(t.dim, valence, components)

    if metric is None:
        raise TensorError(
            "Metric required to contract slots of equal kind",
            f"slots {slot_a}, {slot_b} are both {t.valence[slot_a]}",
        )
    if metric.dim != t.dim or metric.valence != (LOWER, LOWER):
        raise TensorError("Metric must be a (0,2)-tensor of the same dimension")
    if t.valence[slot_a] == LOWER:
        pairing = inverse_matrix(metric.components)
        if pairing is None:
            raise TensorError("Metric is not invertible")
    else:
        pairing = metric.components
    pair = letters[slot_a] + letters[slot_b]
    subscripts = "".join(letters) + f",{pair}->{output}"
    components = rat_einsum(subscripts, t.components, pairing)
    return Tensor(t.dim, valence, components)
