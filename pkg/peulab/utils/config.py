#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Configuration utilities for the peulab application.

Defaults live on the ``Settings`` model. A YAML file is merged over them and
``PEULAB_*`` environment variables override the file (``PEULAB_SEED=7``,
``PEULAB_PEU__ALPHA=0.7``). Command-line flags override everything.
"""

import os
from typing import Optional

import yaml
from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from peulab.exceptions import DomainError
from peulab.utils.logger import get_logger

logger = get_logger(__name__)


class PeuDefaults(BaseModel):
    """Default knobs of the social value function and the section-3 costs."""
    alpha: float = Field(0.8, ge=0.0, le=1.0)
    beta: float = Field(0.5, ge=0.0)
    gamma: float = Field(0.25, ge=0.0)
    cost_c_small: float = Field(0.0, ge=0.0, lt=15.0)
    cost_c_for_g: float = Field(1.0, ge=0.0, lt=15.0)


class EllsbergDefaults(BaseModel):
    """Defaults for the two-stage urn experiment."""
    w_fail: float = 10.0
    p: float = Field(0.3, ge=0.0, le=1.0)
    samples: int = Field(1_000_000, ge=1)
    batch_size: int = Field(65_536, ge=1)


class Settings(BaseSettings):
    """Effective application configuration."""

    model_config = SettingsConfigDict(
        env_prefix="PEULAB_",
        env_nested_delimiter="__",
        extra="ignore",
    )

    seed: int = 42
    workers: int = Field(1, ge=1)
    log_level: str = "INFO"
    log_dir: Optional[str] = None
    output_format: str = "md"
    peu: PeuDefaults = Field(default_factory=PeuDefaults)
    ellsberg: EllsbergDefaults = Field(default_factory=EllsbergDefaults)

    @classmethod
    def settings_customise_sources(cls, settings_cls, init_settings, env_settings,
                                   dotenv_settings, file_secret_settings):
        # Environment beats values read from the YAML file.
        return env_settings, init_settings, file_secret_settings


def load_config(config_path: Optional[str] = None) -> Settings:
    """
    Load configuration from a YAML file.

    Args:
        config_path: Path to the configuration file

    Returns:
        Settings instance

    Raises:
        DomainError: If the file or the environment holds an invalid value
    """
    file_config = {}

    if config_path and os.path.exists(config_path):
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                file_config = yaml.safe_load(f) or {}
            logger.info(f"Configuration loaded from: {config_path}")
        except Exception as e:
            logger.error(f"Error loading configuration from {config_path}: {e}")
            logger.info("Using default configuration")
            file_config = {}
    else:
        logger.debug("No configuration file found. Using default configuration.")

    if not isinstance(file_config, dict):
        raise DomainError(f"configuration in {config_path} must be a mapping")
    try:
        return Settings(**file_config)
    except ValidationError as e:
        logger.error(f"Invalid configuration values in {config_path}")
        raise DomainError(f"invalid configuration: {e}") from e


def save_config(settings: Settings, config_path: str) -> bool:
    """
    Save configuration to a YAML file.

    Args:
        settings: Settings to write
        config_path: Path to save the configuration file

    Returns:
        bool: True if successful, False otherwise
    """
    try:
        os.makedirs(os.path.dirname(os.path.abspath(config_path)), exist_ok=True)

        with open(config_path, 'w', encoding='utf-8') as f:
            yaml.safe_dump(settings.model_dump(), f, default_flow_style=False)

        logger.info(f"Configuration saved to: {config_path}")
        return True
    except Exception as e:
        logger.error(f"Error saving configuration to {config_path}: {e}")
        return False
