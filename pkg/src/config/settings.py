"""Application settings using Pydantic Settings."""

from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Application
    environment: str = "development"
    app_name: str = "dc-grid-welfare"
    app_version: str = "1.0.0"
    debug: bool = False

    # Files
    output_dir: str = "output"
    presets_dir: str = str(Path(__file__).resolve().parents[2] / "presets")

    # Scenario parsing
    strict_config: bool = True

    # Oracle suite
    oracle_instances: int = 50
    oracle_seed: int = 0

    # Export
    plot_format: str = "svg"

    @property
    def is_development(self) -> bool:
        """Check if running in development mode."""
        return self.environment == "development"

    @property
    def presets_path(self) -> Path:
        """Directory holding the shipped scenario presets."""
        return Path(self.presets_dir)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
