"""Module for configuring logging with rich formatting."""
import logging
from pathlib import Path
from typing import Optional
from rich.logging import RichHandler
from rich.console import Console

from .env import env_config

# Log output goes to stderr so reports on stdout stay parseable
console = Console(stderr=True)


def setup_logging(verbose: bool = False, log_file: Optional[str] = None) -> None:
    """Set up logging configuration."""
    level = logging.DEBUG if verbose else logging.getLevelName(env_config.get_log_level())
    if not isinstance(level, int):
        level = logging.INFO

    # Remove existing handlers
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    # Console handler with rich formatting
    console_handler = RichHandler(
        console=console,
        show_path=False,
        markup=True,
        rich_tracebacks=True,
        log_time_format="[%X]"
    )
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter("%(message)s"))
    root_logger.addHandler(console_handler)

    # File handler with detailed formatting
    if log_file is not None:
        logs_dir = Path("logs")
        logs_dir.mkdir(exist_ok=True)
        log_path = logs_dir / log_file
        file_handler = logging.FileHandler(log_path, encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)  # Always log debug to file
        file_format = "%(asctime)s [%(levelname)s] %(name)s (%(filename)s:%(lineno)d): %(message)s"
        file_handler.setFormatter(logging.Formatter(file_format))
        root_logger.addHandler(file_handler)
        root_logger.setLevel(logging.DEBUG)
        logging.debug("Log file: %s", log_path.absolute())

    logging.debug("Logging initialized (Level: %s)", logging.getLevelName(level))
