"""
Application configuration using Pydantic Settings.
"""

from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables (prefix ``GIBC_``)."""

    model_config = SettingsConfigDict(
        env_prefix="GIBC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Logging
    log_level: str = "INFO"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Runs
    output_dir: Path = Path("runs")

    # Compute
    threads: int = 1  # incident fields solved concurrently


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
