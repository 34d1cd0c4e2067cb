"""
Configuration management for hyperprover
"""
import copy
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from hyperprover.core.constants import (
    DEFAULT_CERTIFICATE_MAX_LABELS,
    DEFAULT_MAX_CONSTRAINTS,
    DEFAULT_MAX_STEPS,
    DEFAULT_TIMEOUT_MS,
)

logger = logging.getLogger(__name__)

CONFIG_FILENAME = "prover.yaml"


class Config:
    """hyperprover configuration"""

    DEFAULT_CONFIG = {
        "search": {
            "timeout_ms": DEFAULT_TIMEOUT_MS,
            "max_steps": DEFAULT_MAX_STEPS,
            "refute_budget": 0,
            "seed": 0,
            "verify_measures": True,
        },
        "lp": {
            "max_constraints": DEFAULT_MAX_CONSTRAINTS,
        },
        "labelled": {
            "certificate_max_labels": DEFAULT_CERTIFICATE_MAX_LABELS,
        },
        "sampling": {
            "numerator_range": [-8, 8],
            "denominators": [1, 2, 3, 4],
            "soundness_samples": 200,
        },
        "corpus": {
            "max_nodes": 7,
            "reduction_systems": 200,
            "elaboration_goals": 100,
        },
        "trace": {
            "enabled": False,
        },
        "runtime": {
            "base_dir": ".prover",
        },
    }

    def __init__(self, data: Dict[str, Any]):
        """
        Initialize configuration

        Args:
            data: Configuration dictionary
        """
        self.data = data

    @classmethod
    def default(cls) -> "Config":
        """Configuration with every value at its default"""
        return cls(copy.deepcopy(cls.DEFAULT_CONFIG))

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "Config":
        """
        Load configuration from file

        Args:
            config_path: Path to prover.yaml (defaults to ./prover.yaml)

        Returns:
            Config instance
        """
        if config_path is None:
            path = Path.cwd() / CONFIG_FILENAME
        else:
            path = Path(config_path)

        if not path.exists():
            return cls.default()

        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as exc:
            logger.warning("Ignoring %s: %s", path, exc)
            return cls.default()

        if not isinstance(data, dict):
            logger.warning("Ignoring %s: top level is not a mapping", path)
            return cls.default()

        merged = copy.deepcopy(cls.DEFAULT_CONFIG)
        cls._deep_merge(merged, data)
        return cls(merged)

    @staticmethod
    def _deep_merge(base: Dict, override: Dict) -> None:
        """Deep merge override into base"""
        for key, value in override.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                Config._deep_merge(base[key], value)
            else:
                base[key] = value

    def save(self, path: Optional[Path] = None) -> Path:
        """
        Save configuration to file

        Args:
            path: Path to save to (defaults to ./prover.yaml)
        """
        if path is None:
            path = Path.cwd() / CONFIG_FILENAME

        with open(path, "w", encoding="utf-8") as f:
            yaml.dump(self.data, f, default_flow_style=False, sort_keys=False)
        return Path(path)

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-notation key

        Args:
            key: Key in dot notation (e.g., "search.timeout_ms")
            default: Default value if key not found

        Returns:
            Configuration value
        """
        value: Any = self.data
        for part in key.split("."):
            if isinstance(value, dict) and part in value:
                value = value[part]
            else:
                return default
        return value

    # Search
    @property
    def timeout_ms(self) -> int:
        return int(self.get("search.timeout_ms", DEFAULT_TIMEOUT_MS))

    @property
    def max_steps(self) -> int:
        return int(self.get("search.max_steps", DEFAULT_MAX_STEPS))

    @property
    def refute_budget(self) -> int:
        return int(self.get("search.refute_budget", 0))

    @property
    def seed(self) -> int:
        return int(self.get("search.seed", 0))

    @property
    def verify_measures(self) -> bool:
        return bool(self.get("search.verify_measures", True))

    # Kernels
    @property
    def max_constraints(self) -> int:
        return int(self.get("lp.max_constraints", DEFAULT_MAX_CONSTRAINTS))

    @property
    def certificate_max_labels(self) -> int:
        return int(self.get("labelled.certificate_max_labels", DEFAULT_CERTIFICATE_MAX_LABELS))

    # Sampling
    @property
    def numerator_range(self) -> Tuple[int, int]:
        low, high = self.get("sampling.numerator_range", [-8, 8])
        return int(low), int(high)

    @property
    def denominators(self) -> List[int]:
        return [int(d) for d in self.get("sampling.denominators", [1, 2, 3, 4])]

    @property
    def soundness_samples(self) -> int:
        return int(self.get("sampling.soundness_samples", 200))

    def sample_values(self) -> List[Fraction]:
        """All rationals the sampler can draw, for reporting and tests"""
        low, high = self.numerator_range
        return sorted({Fraction(n, d) for n in range(low, high + 1) for d in self.denominators})

    # Corpus
    @property
    def max_nodes(self) -> int:
        return int(self.get("corpus.max_nodes", 7))

    @property
    def trace_enabled(self) -> bool:
        return bool(self.get("trace.enabled", False))

    @property
    def runtime_base_dir(self) -> str:
        return str(self.get("runtime.base_dir", ".prover"))
