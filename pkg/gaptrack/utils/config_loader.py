"""
Configuration Loader Utility

Loads configuration from .env files and environment variables and provides
defaults with type conversion and validation.
"""

import os
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar

from dotenv import dotenv_values

T = TypeVar('T')

logger = logging.getLogger(__name__)

DEFAULT_ENV_FILES = ['.env', 'config/.env']

DEFAULTS: Dict[str, Any] = {
    'GAPTRACK_LOG_LEVEL': 'WARNING',
    'GAPTRACK_JOBS': 1,
    'GAPTRACK_ORACLE_NODE_LIMIT': 10_000_000,
    'GAPTRACK_LLL_PHASE_CAP': 10_000_000,
    'GAPTRACK_MAX_TRACK_LENGTH': 1 << 24,
    'GAPTRACK_BENCH_TIMING': False,
}


class ConfigLoader:
    """Configuration loader with .env and environment variable support"""

    def __init__(self, env_file_paths: Optional[List[str]] = None, environ: Optional[Dict[str, str]] = None):
        """
        Initialize configuration loader

        Args:
            env_file_paths: .env files to load, earlier files win over later ones
            environ: environment mapping (defaults to os.environ); always wins over files
        """
        self.env_vars: Dict[str, str] = {}
        self._load_env_files(env_file_paths if env_file_paths is not None else DEFAULT_ENV_FILES)
        self._load_system_env(os.environ if environ is None else environ)

    def _load_env_files(self, file_paths: List[str]):
        for file_path in file_paths:
            env_path = Path(file_path)
            if not env_path.is_file():
                continue
            try:
                values = dotenv_values(env_path)
            except OSError as e:
                logger.warning(f"Failed to load {file_path}: {e}")
                continue
            for key, value in values.items():
                if value is not None and key not in self.env_vars:
                    self.env_vars[key] = value
            logger.debug(f"Loaded configuration from {file_path}")

    def _load_system_env(self, environ: Dict[str, str]):
        for key, value in environ.items():
            if key.startswith('GAPTRACK_'):
                self.env_vars[key] = value

    def get(self, key: str, default: Any = None, type_class: Type[T] = str) -> T:
        """
        Get configuration value with type conversion

        Falls back to the built-in default for known keys, then to `default`.
        """
        if default is None:
            default = DEFAULTS.get(key)
        value = self.env_vars.get(key)
        if value is None:
            return default
        try:
            return self._convert_type(value, type_class)
        except (ValueError, TypeError) as e:
            logger.warning(f"Failed to convert {key}={value} to {type_class.__name__}: {e}")
            return default

    def get_boolean(self, key: str, default: Optional[bool] = None) -> bool:
        if default is None:
            default = bool(DEFAULTS.get(key, False))
        value = self.env_vars.get(key)
        if value is None:
            return default
        return value.strip().lower() in ('true', '1', 'yes', 'on', 'enabled')

    def get_int(self, key: str, default: Optional[int] = None) -> int:
        return self.get(key, default, int)

    def _convert_type(self, value: str, type_class: Type[T]) -> T:
        if type_class == str:
            return value
        elif type_class == int:
            return int(value.replace('_', ''))
        elif type_class == float:
            return float(value)
        elif type_class == bool:
            return value.lower() in ('true', '1', 'yes', 'on', 'enabled')
        return type_class(value)

    def get_limits_config(self) -> Dict[str, int]:
        """Search and sampling limits"""
        return {
            'oracle_node_limit': self.get_int('GAPTRACK_ORACLE_NODE_LIMIT'),
            'lll_phase_cap': self.get_int('GAPTRACK_LLL_PHASE_CAP'),
            'max_track_length': self.get_int('GAPTRACK_MAX_TRACK_LENGTH'),
        }

    def get_runtime_config(self) -> Dict[str, Any]:
        """Logging, parallelism and timing"""
        return {
            'log_level': self.get('GAPTRACK_LOG_LEVEL').upper(),
            'jobs': self.get_int('GAPTRACK_JOBS'),
            'bench_timing': self.get_boolean('GAPTRACK_BENCH_TIMING'),
        }

    def get_all_config(self) -> Dict[str, Any]:
        return {
            'limits': self.get_limits_config(),
            'runtime': self.get_runtime_config(),
        }

    def validate_config(self) -> List[str]:
        """Validate configuration and return list of issues"""
        issues = []

        for key, value in self.get_limits_config().items():
            if value < 1:
                issues.append(f"Invalid {key}: {value} (must be positive)")

        runtime = self.get_runtime_config()
        if runtime['jobs'] < 1:
            issues.append(f"Invalid jobs: {runtime['jobs']} (must be positive)")
        if runtime['log_level'] not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            issues.append(f"Unknown log level: {runtime['log_level']}")

        return issues


# Global configuration loader instance
config_loader = ConfigLoader()


def get_config() -> ConfigLoader:
    """Get the global configuration loader instance"""
    return config_loader
