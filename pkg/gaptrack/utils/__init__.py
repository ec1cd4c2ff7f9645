"""
Configuration and logging helpers
"""

from .config_loader import ConfigLoader, get_config
from .logging_config import setup_logging

__all__ = ["ConfigLoader", "get_config", "setup_logging"]
