"""Configuration management for frame_soliton."""

from pathlib import Path
from typing import Any, Dict, Optional

import toml

from frame_soliton.geometry.derived import PseudoProjectiveParams
from frame_soliton.soliton.variants import VariantFactory

OUTPUT_FORMATS = ("text", "json")


class FrameSolitonConfig:
    """Load and manage frame_soliton configuration from TOML."""

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = config_path or (
            Path.home() / ".frame_soliton" / "config.toml"
        )
        self.config_data = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        if not self.config_path.exists():
            raise FileNotFoundError(f"Config file not found: {self.config_path}")
        return toml.load(self.config_path)

    def get_console_logging(self) -> bool:
        """Return the console_logging setting from config,
        defaulting to False if not present."""
        return self.config_data.get("logging", {}).get("console_logging", False)

    def get_logging_level(self) -> str:
        return self.config_data.get("logging", {}).get("default_log_level", "WARNING")

    def get_default_format(self) -> str:
        fmt = self.config_data.get("report", {}).get("default_format", "text")
        return fmt if fmt in OUTPUT_FORMATS else "text"

    def get_default_variant(self) -> str:
        return self.config_data.get("soliton", {}).get(
            "default_variant", VariantFactory.DEFAULT
        )

    def get_pseudo_projective_params(self) -> PseudoProjectiveParams:
        """Pseudo-projective constants from ``[pseudo_projective]``.

        Raises:
            RationalFormatError: If a value is not an integer or ``"p/q"``
            ParameterError: If ``a`` or ``b`` is zero
        """
        section = self.config_data.get("pseudo_projective", {})
        return PseudoProjectiveParams(
            a=section.get("a", 1),
            b=section.get("b", 1),
            r_override=section.get("r_override"),
        )
