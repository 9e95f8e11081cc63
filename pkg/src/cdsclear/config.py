"""
Runtime configuration for cdsclear.

Values come from environment variables prefixed with ``CDSCLEAR_`` or from a
``.env`` file in the working directory.
"""
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Solver limits, numeric tolerances and logging."""

    model_config = SettingsConfigDict(env_prefix="CDSCLEAR_", env_file=".env", extra="ignore")

    max_branches: int = Field(default=2**20, ge=1, description="Cap on branch assignments enumerated by the dedicated solver")
    bit_warning_threshold: int = Field(default=10_000, ge=1, description="Bit size that triggers a coefficient-growth warning")
    damping: float = Field(default=0.5, gt=0.0, le=1.0, description="Damping factor of the fixed-point iteration")
    max_iter: int = Field(default=100_000, ge=1, description="Iteration cap of the fixed-point iteration")
    eps: float = Field(default=1e-9, gt=0.0, description="Default residual target of the fixed-point iteration")
    cycle_cap: int = Field(default=100_000, ge=1, description="Simple-cycle enumeration cap")
    precision_digits: int = Field(default=50, ge=15, description="Decimal digits used for square roots in circuit evaluation")
    gadget_tolerance: float = Field(default=1e-12, gt=0.0, description="Harness tolerance for cyclic gadgets")
    workers: int = Field(default=1, ge=1, description="Processes used for branch enumeration")
    log_level: str = Field(default="WARNING", description="Logging level applied by the command line")


@lru_cache
def get_settings() -> Settings:
    """Return the process-wide settings instance."""
    return Settings()
