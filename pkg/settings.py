"""
Toolkit configuration.

Values are read from a dotenv file (default ``.env``) with the ``MYCIELSKI_``
prefix, e.g. ``MYCIELSKI_SOLVER_GUARD=25``. The process environment is not
consulted, so two runs with the same files and flags behave identically.
"""

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from toolkit_errors import ConfigError

DEFAULT_CONFIG_FILE = ".env"


class ToolkitSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="MYCIELSKI_",
        env_file=DEFAULT_CONFIG_FILE,
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Largest graph (in vertices) handed to the exact circular solver
    solver_guard: int = Field(default=25, ge=1)
    # Largest t for the brute-force minimum 3-cut oracle (|V(F_6)| = 31)
    brute_mincut_max_t: int = Field(default=6, ge=3)
    # Largest t for any forest command (|V(F_t)| = 2^(t-1) - 1)
    forest_max_t: int = Field(default=16, ge=1)
    corollary1_exhaustive_limit: int = Field(default=200_000, ge=1)
    corollary1_samples: int = Field(default=20_000, ge=1)
    sample_seed: int = 0
    workers: int = Field(default=1, ge=1)
    output_dir: str = "certificates"

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings,
    ):
        return (init_settings, dotenv_settings)


def load_settings(config_file=None, **overrides):
    """
    Load settings from a dotenv file.

    Args:
        config_file (str | None): dotenv file to read; ``None`` means ``.env``
            in the working directory (silently skipped when absent); a file
            named here must exist
        **overrides: explicit values that win over the file

    Returns:
        ToolkitSettings

    Raises:
        ConfigError: ``config_file`` does not exist
    """
    overrides = {key: value for key, value in overrides.items() if value is not None}
    if config_file is None:
        return ToolkitSettings(**overrides)
    if not os.path.isfile(config_file):
        raise ConfigError(f"settings file {config_file} not found")
    return ToolkitSettings(_env_file=config_file, **overrides)
