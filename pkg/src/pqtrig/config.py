"""pqtrig numerical settings.

Extends Pydantic BaseSettings so every tolerance can be overridden from the
environment (``PQTRIG_QUAD_TOLERANCE=1e-12``) or a local .env file.
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class PQTrigSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="PQTRIG_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Quadrature
    quad_tolerance: float = Field(1e-13, gt=0)
    quad_base_level: int = Field(6, ge=3, le=10)
    quad_max_level: int = Field(12, ge=3, le=16)
    gk_max_intervals: int = Field(200, ge=1)

    # Inversion
    newton_max_iter: int = Field(200, ge=10)
    residual_tolerance: float = Field(1e-11, gt=0)
    singular_margin: float = Field(1e-12, ge=0)
    y_cap: float = Field(1.0 - 1e-15, gt=0.5, lt=1.0)

    # Verification
    infinite_window: float = Field(10.0, gt=0)
    strict_margin: float = Field(1e-13, gt=0)
    verify_tolerance: float = Field(1e-9, gt=0)

    log_level: str = "WARNING"


_settings = None


def get_settings() -> PQTrigSettings:
    global _settings
    if _settings is None:
        _settings = PQTrigSettings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next get_settings() re-reads the environment."""
    global _settings
    _settings = None
