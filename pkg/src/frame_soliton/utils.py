"""Utility functions for frame_soliton."""

from fractions import Fraction
from typing import Any, Optional, Sequence

from frame_soliton.geometry.manifold import frame_name
from frame_soliton.kernel.rational import format_rat


def get_command_context(command: str, args: Optional[dict] = None) -> str:
    """Generate a context string for logging.

    Args:
        command: The command being executed
        args: Optional dictionary of command arguments

    Returns:
        Formatted context string
    """
    if args:
        # Filter out None values and format arguments
        filtered_args = {k: v for k, v in args.items() if v is not None}
        if filtered_args:
            args_str = " | ".join(f"{k}={v}" for k, v in filtered_args.items())
            return f"[{command}] {args_str}"

    return f"[{command}]"


def yes_no(flag: Optional[bool]) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def format_term(coefficient: Fraction, name: str) -> str:
    """``e1``, ``-e5``, ``2e3``, ``(1/3)e1``."""
    if coefficient == 1:
        return name
    if coefficient == -1:
        return f"-{name}"
    if coefficient.denominator != 1:
        return f"({format_rat(coefficient)}){name}"
    return f"{format_rat(coefficient)}{name}"


def format_vector(components: Sequence[Any]) -> str:
    """Frame combination as text: ``2e3``, ``e1 - (1/2)e4``, ``0``."""
    text = ""
    for k, raw in enumerate(components):
        value = Fraction(raw)
        if value == 0:
            continue
        if not text:
            text = format_term(value, frame_name(k))
        elif value < 0:
            text += f" - {format_term(-value, frame_name(k))}"
        else:
            text += f" + {format_term(value, frame_name(k))}"
    return text or "0"


def format_index(index: Sequence[int]) -> str:
    """0-based index tuple as 1-based frame names: ``(0, 2) -> "e1,e3"``."""
    return ",".join(frame_name(i) for i in index)
