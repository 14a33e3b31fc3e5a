"""Environment configuration for kemenyqa."""
import os
import logging
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

from ..errors import InvalidArgumentError

logger = logging.getLogger(__name__)

# Load environment variables from the project's .env file
env_path = Path(__file__).parent.parent.parent.parent / '.env'
load_dotenv(dotenv_path=env_path)

DEFAULT_EXACT_CAP = 24


def _int_from_env(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InvalidArgumentError(f'{name} must be an integer, got {raw!r}')
    if value < 1:
        raise InvalidArgumentError(f'{name} must be positive, got {value}')
    return value


class EnvironmentConfig:
    """Environment configuration handler."""

    @staticmethod
    def get_exact_cap() -> int:
        """Get the exact solver's variable cap."""
        cap = _int_from_env('KEMENY_QA_EXACT_CAP') or DEFAULT_EXACT_CAP
        logger.debug(f'Exact solver cap: {cap}')
        return cap

    @staticmethod
    def get_exact_cap_override() -> Optional[int]:
        """Get the exact solver cap only when the environment sets one."""
        return _int_from_env('KEMENY_QA_EXACT_CAP')

    @staticmethod
    def get_num_workers() -> Optional[int]:
        """Get the worker count for parallel sections."""
        workers = _int_from_env('KEMENY_QA_WORKERS')
        logger.debug(f'Workers: {workers}')
        return workers

    @staticmethod
    def get_log_level() -> str:
        """Get logging level."""
        level = os.getenv('LOG_LEVEL', 'INFO').upper()
        logger.debug(f'Log level: {level}')
        return level


# Create a singleton instance
env_config = EnvironmentConfig()
