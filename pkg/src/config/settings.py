"""Engine settings loaded from environment variables."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical engine settings loaded from environment variables.

    Every field can be overridden with a ``SEQSPEC_`` prefixed variable,
    e.g. ``SEQSPEC_MAX_WORKERS=4``.
    """

    # Dense kernels
    eig_tol: float = Field(
        default=1e-12,
        gt=0,
        description="Relative off-diagonal tolerance of the Jacobi eigensolver",
    )
    max_sweeps: int = Field(
        default=64,
        ge=1,
        description="Maximum number of Jacobi sweeps before giving up",
    )
    clamp_ratio: float = Field(
        default=1e-10,
        ge=0,
        description="Singular values below clamp_ratio * Sigma_1 are set to 0",
    )
    multisection_points: int = Field(
        default=32,
        ge=2,
        description="Sub-intervals per multisection round of the Sturm eigenvalue search",
    )

    # Evaluation engine
    cache_size: int = Field(
        default=256,
        ge=0,
        description="Matrices kept by the combinator evaluation cache",
    )
    max_workers: int = Field(
        default=1,
        ge=1,
        description="Threads used to evaluate different n concurrently",
    )

    # Logging
    log_level: str = Field(
        default="INFO",
        description="Default loguru level when no -v flag is given",
    )

    model_config = SettingsConfigDict(
        env_prefix="SEQSPEC_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
