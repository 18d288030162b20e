import os
from typing import Dict, Any
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

ENV_PREFIX = "CPA_"


def _env(name: str, default: Any, cast=float) -> Any:
    """Read CPA_<NAME> from the environment, falling back to the default"""
    raw = os.getenv(f"{ENV_PREFIX}{name.upper()}")
    if raw is None or raw == "":
        return default
    return cast(raw)


def load_config() -> Dict[str, Any]:
    """Load configuration settings from environment variables with defaults"""

    config = {
        # Quadrature oracle
        "default_rel_tol": _env("default_rel_tol", 1e-10),
        "overflow_guard": _env("overflow_guard", 600.0),
        "tail_w": _env("tail_w", 50.0),
        "panel_half_periods": _env("panel_half_periods", 4.0),
        "evaluation_budget": _env("evaluation_budget", 10_000_000, int),

        # Special functions
        "x_switch": _env("x_switch", 40.0),
        "series_max_terms": _env("series_max_terms", 5000, int),

        # Verification harness
        "error_floor_factor": _env("error_floor_factor", 100.0),
        "epsilon_slack": _env("epsilon_slack", 10.0),
        "default_delta": _env("default_delta", 0.1),
        "sweep_workers": _env("sweep_workers", 1, int),

        # CLI
        "log_level": _env("log_level", "WARNING", str),
    }

    return config
