import configparser
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

from app.core.errors import ConfigError

# Name of the implicit section wrapped around key = value config files
CONFIG_SECTION = "pipeline"


class Settings(BaseSettings):
    """Application settings."""

    # Application settings
    APP_NAME: str = "Term Hierarchy Network Builder"
    ENVIRONMENT: str = "development"
    DEBUG: bool = True
    LOG_LEVEL: str = "INFO"

    # Server settings
    HOST: str = "0.0.0.0"
    PORT: int = 8000

    # Pipeline defaults
    WORKERS: Optional[int] = None  # None means available parallelism
    OUTPUT_DIR: str = "output"

    model_config = SettingsConfigDict(
        env_prefix="NNHT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
    )


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Read a ``key = value`` pipeline config file.

    Keys are the long command-line flag names without the leading dashes.
    Lines starting with ``#`` are comments.

    Args:
        path: Path to the config file

    Returns:
        Dict[str, Any]: Raw string values keyed by flag name, dashes turned
        into underscores
    """
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigError(f"config file not found: {path}")

    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",))
    try:
        text = config_path.read_text(encoding="utf-8")
        parser.read_string(f"[{CONFIG_SECTION}]\n{text}", source=str(config_path))
    except (configparser.Error, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot parse config file {path}: {e}") from e

    return {key.replace("-", "_"): value for key, value in parser.items(CONFIG_SECTION)}


# Create settings instance
settings = Settings()
