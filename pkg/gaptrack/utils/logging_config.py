"""
Logging setup for the command line interface
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from .config_loader import get_config


def setup_logging(level: Optional[str] = None) -> None:
    """Route log records to stderr through rich so stdout carries only artifacts"""
    level_name = (level or get_config().get('GAPTRACK_LOG_LEVEL')).upper()
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(name)s: %(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )
