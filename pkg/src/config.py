"""Application configuration with environment variable support."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support.

    Every field can be overridden by an environment variable carrying the
    ``CARTAN_CR_`` prefix, e.g. ``CARTAN_CR_SEED=7``.
    """

    # Sampling settings
    SAMPLES: int = Field(default=100, ge=1)
    TOL: float = Field(default=1e-9, gt=0)
    SEED: int = 0
    MAX_SAMPLER_ROUNDS: int = Field(default=20, ge=1)

    # Domain settings
    X_LOWER: float = 0.1
    X_UPPER: float = 10.0
    AUX_BOUND: float = 1.0

    # Group settings
    GROUP_TOL: float = Field(default=1e-12, gt=0)

    # Logging settings
    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="CARTAN_CR_",
        case_sensitive=True,
    )

    @property
    def seed_from_environment(self) -> bool:
        """Whether SEED was supplied by the environment rather than defaulted."""
        return "SEED" in self.model_fields_set


# Create global settings instance
settings = Settings()
