"""Configuration module for seqspec."""

from src.config.loader import AnalysisConfig, CountingRules, Tolerances, get_config
from src.config.settings import Settings, get_settings

__all__ = [
    "AnalysisConfig",
    "CountingRules",
    "Settings",
    "Tolerances",
    "get_config",
    "get_settings",
]
