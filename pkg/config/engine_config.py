import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional


@dataclass
class EngineStats:
    """Counters collected while a verdict is being computed."""

    spairs: int = 0
    groebner_runs: int = 0
    largest_basis: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {
            "spairs": self.spairs,
            "groebner_runs": self.groebner_runs,
            "largest_basis": self.largest_basis,
        }


logger = logging.getLogger(__name__)

_active_config: ContextVar[Optional[Dict[str, Any]]] = ContextVar("snk_engine_config", default=None)
_active_stats: ContextVar[Optional[EngineStats]] = ContextVar("snk_engine_stats", default=None)


class EngineConfig:
    """Configuration class for engine settings and options."""

    ENGINE_NAME = "snk"
    ENGINE_VERSION = "0.3.0"
    CERTIFICATE_SCHEMA = 1

    AVAILABLE_ORDERS = {
        "grevlex": {
            "name": "Graded reverse lexicographic",
            "description": "Default order, usually the smallest bases for Buchberger",
        },
        "lex": {
            "name": "Pure lexicographic",
            "description": "Declaration order decides precedence; large intermediate bases",
        },
    }

    # Default configuration
    DEFAULT_CONFIG = {
        "budget": 200000,
        "order": "grevlex",
        "nullstellensatz_bound": 12,
        "witness_degree_slack": 2,
        "swan_degree": 3,
        "oracle_prime": 10007,
        "jobs": 1,
    }

    BUDGET_ENV = "SNK_BUDGET"

    @classmethod
    def get_order_names(cls) -> List[str]:
        """Get list of available order names."""
        return list(cls.AVAILABLE_ORDERS)

    @classmethod
    def validate_config(cls, config: Dict[str, Any]) -> Dict[str, Any]:
        """Validate and sanitize configuration."""
        validated_config = cls.DEFAULT_CONFIG.copy()

        if config.get("budget") is not None:
            validated_config["budget"] = max(1, int(config["budget"]))

        if config.get("order") in cls.AVAILABLE_ORDERS:
            validated_config["order"] = config["order"]

        if config.get("nullstellensatz_bound") is not None:
            validated_config["nullstellensatz_bound"] = max(1, min(64, int(config["nullstellensatz_bound"])))

        if config.get("witness_degree_slack") is not None:
            validated_config["witness_degree_slack"] = max(0, min(16, int(config["witness_degree_slack"])))

        if config.get("swan_degree") is not None:
            validated_config["swan_degree"] = max(1, min(6, int(config["swan_degree"])))

        if config.get("oracle_prime") is not None:
            validated_config["oracle_prime"] = max(3, int(config["oracle_prime"]))

        if config.get("jobs") is not None:
            validated_config["jobs"] = max(1, min(64, int(config["jobs"])))

        return validated_config

    @classmethod
    def from_env(cls, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Build a validated configuration from SNK_BUDGET and explicit overrides.

        Explicit overrides win over the environment, which wins over the defaults.
        """
        config: Dict[str, Any] = {}
        env_budget = os.environ.get(cls.BUDGET_ENV)
        if env_budget:
            try:
                config["budget"] = int(env_budget)
            except ValueError:
                logger.warning("ignoring %s=%r: not an integer, using budget %d",
                               cls.BUDGET_ENV, env_budget, cls.DEFAULT_CONFIG["budget"])
        for key, value in (overrides or {}).items():
            if value is not None:
                config[key] = value
        return cls.validate_config(config)

    @classmethod
    def current(cls) -> Dict[str, Any]:
        """Get the configuration active in this context."""
        config = _active_config.get()
        if config is None:
            config = cls.from_env()
            _active_config.set(config)
        return config

    @classmethod
    def get(cls, key: str) -> Any:
        return cls.current()[key]

    @classmethod
    @contextmanager
    def use(cls, config: Dict[str, Any]) -> Iterator[Dict[str, Any]]:
        """Activate a configuration for the duration of a block."""
        token = _active_config.set(cls.validate_config(config))
        try:
            yield _active_config.get()
        finally:
            _active_config.reset(token)

    @classmethod
    def stats(cls) -> EngineStats:
        stats = _active_stats.get()
        if stats is None:
            stats = EngineStats()
            _active_stats.set(stats)
        return stats

    @classmethod
    @contextmanager
    def collect_stats(cls) -> Iterator[EngineStats]:
        """Collect engine counters for the duration of a block."""
        token = _active_stats.set(EngineStats())
        try:
            yield _active_stats.get()
        finally:
            _active_stats.reset(token)
