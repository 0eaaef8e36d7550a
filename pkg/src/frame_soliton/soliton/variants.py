"""Soliton equation variants and their registry."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from frame_soliton.exceptions import VariantError


class TensorChoice(str, Enum):
    RICCI = "ricci"
    STAR_RICCI = "star_ricci"


@dataclass(frozen=True)
class SolitonVariant:
    """Shape of ``L_V g + 2T + 2 lambda~ g [+ 2 mu eta (x) eta] = 0``.

    ``potential`` of ``None`` means the Reeb field ``xi``.
    """

    name: str
    tensor_choice: TensorChoice
    conformal: bool
    eta_term: bool
    potential: Optional[Tuple[Fraction, ...]] = None

    def with_potential(
        self, potential: Optional[Tuple[Fraction, ...]]
    ) -> "SolitonVariant":
        return SolitonVariant(
            self.name, self.tensor_choice, self.conformal, self.eta_term, potential
        )


class VariantFactory:
    """Registry of the named soliton variants."""

    _variants: Dict[str, SolitonVariant] = {
        "ricci": SolitonVariant("ricci", TensorChoice.RICCI, False, False),
        "eta-ricci": SolitonVariant("eta-ricci", TensorChoice.RICCI, False, True),
        "conformal-eta-ricci": SolitonVariant(
            "conformal-eta-ricci", TensorChoice.RICCI, True, True
        ),
        "star-ricci": SolitonVariant(
            "star-ricci", TensorChoice.STAR_RICCI, False, False
        ),
        "star-conformal-eta": SolitonVariant(
            "star-conformal-eta", TensorChoice.STAR_RICCI, True, True
        ),
    }

    DEFAULT = "star-conformal-eta"

    @classmethod
    def create(
        cls, name: str, potential: Optional[Tuple[Fraction, ...]] = None
    ) -> SolitonVariant:
        """Return the named variant, optionally with a constant potential field."""
        if name not in cls._variants:
            raise VariantError(
                f"Unknown soliton variant: {name}",
                f"choose from {', '.join(cls.get_available_variants())}",
            )
        return cls._variants[name].with_potential(potential)

    @classmethod
    def get_available_variants(cls) -> List[str]:
        """Return the supported variant names."""
        return list(cls._variants.keys())
