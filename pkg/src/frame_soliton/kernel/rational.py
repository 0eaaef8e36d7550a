"""Exact rational scalars.

``Rat`` is :class:`fractions.Fraction`: arbitrary precision, always kept in
canonical form (positive denominator, reduced). Parsing is strict so that a
float never sneaks into the math core.
"""

import re
from fractions import Fraction
from typing import Any, Optional

from frame_soliton.exceptions import RationalFormatError

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rat(value: Any, location: Optional[str] = None) -> Fraction:
    """Parse an integer or a ``"p/q"`` string into a canonical Rat.

    Args:
        value: An ``int``, a ``Fraction`` or a string ``"p"`` / ``"p/q"``
            with ``q > 0``
        location: Optional field location used in the error details

    Returns:
        The parsed rational

    Raises:
        RationalFormatError: If the value is a float, a bool, a malformed
            string or has a zero denominator
    """
    if isinstance(value, bool):
        raise RationalFormatError(f"Boolean is not a rational: {value!r}", location)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_PATTERN.match(value)
        if not match:
            raise RationalFormatError(f"Malformed rational: {value!r}", location)
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise RationalFormatError(f"Zero denominator in {value!r}", location)
        return Fraction(numerator, denominator)
    raise RationalFormatError(
        f"Expected integer or 'p/q' string, got {type(value).__name__}: {value!r}",
        location,
    )


def format_rat(value: Fraction) -> str:
    """Render a rational exactly: ``"5"``, ``"-1/3"``."""
    return str(Fraction(value))


def rat_to_document(value: Fraction) -> Any:
    """Encode a rational for a manifold document: int when integral, else ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return str(value)
