import json
import logging
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

from .env import env_config

logger = logging.getLogger(__name__)


@dataclass
class Config:
    """Default solver and harness settings."""

    # Added to bounds when choosing penalties
    epsilon: float = 0.5

    # Simulated annealing budget
    reads: int = 2500
    sweeps: int = 200
    batch_size: int = 500

    # Enumeration caps (QUBO variables / candidates)
    exact_cap: int = 24
    brute_force_cap: int = 9
    reachable_cap: int = 8

    # Iterative and pair-removal loop bounds
    max_iterations: int = 100
    max_restarts: int = 3
    pr_min_gap: int = 2

    # Worker threads (None lets the processor decide)
    num_workers: Optional[int] = None

    # Report format (json or csv)
    output_format: str = "json"

    @classmethod
    def from_file(cls, config_file: Path) -> "Config":
        """Load configuration from a JSON file."""
        try:
            with open(config_file) as f:
                config_data = json.load(f)
            return cls(**config_data)
        except Exception as e:
            raise Exception(f"Error loading configuration from {config_file}: {str(e)}")

    def to_file(self, config_file: Path) -> None:
        """Save configuration to a JSON file."""
        try:
            with open(config_file, "w") as f:
                json.dump(self.to_dict(), f, indent=4)
        except Exception as e:
            raise Exception(f"Error saving configuration to {config_file}: {str(e)}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def update(self, **kwargs) -> None:
        """Update configuration with new values; None values are ignored."""
        known = {f.name for f in fields(self)}
        for key, value in kwargs.items():
            if key not in known:
                raise ValueError(f"Invalid configuration option: {key}")
            if value is not None:
                setattr(self, key, value)

    def get_exact_cap(self) -> int:
        """Exact solver cap, with KEMENY_QA_EXACT_CAP taking precedence."""
        override = env_config.get_exact_cap_override()
        if override is not None:
            logger.debug("Exact cap overridden from environment: %d", override)
            return override
        return self.exact_cap
