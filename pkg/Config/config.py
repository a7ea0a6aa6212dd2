"""
Configuration for the isolation criticality toolkit
Reads configuration from environment variables (optionally from a .env file)
"""

import os
from dotenv import load_dotenv
from Config.logging_config import setup_logging

# Load environment variables from .env file
load_dotenv()

logger = setup_logging()

# Survey configuration
DEFAULT_WORKERS = os.getenv("GRAPHCRIT_WORKERS", "1")
SURVEY_DEFAULT_MAX_N = os.getenv("GRAPHCRIT_SURVEY_MAX_N", "14")
SURVEY_MIN_N = 5
SURVEY_LARGE_MAX_N = 16
RECHECK_FRACTION = os.getenv("GRAPHCRIT_RECHECK_FRACTION", "0.01")

# Criticality search configuration (0 disables the budget)
CRIT_EVAL_BUDGET = os.getenv("GRAPHCRIT_EVAL_BUDGET", "1048576")

# Enumeration limits
CONNECTED_GRAPHS_MAX_N = 8

# CLI output
ANALYSIS_MAX_SETS = os.getenv("GRAPHCRIT_ANALYSIS_MAX_SETS", "50")


def _as_int(name: str, raw: str, minimum: int) -> int:
    value = int(raw)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


# Validation - ensure numeric environment variables are well formed
def validate_config():
    """Validate and convert the numeric settings, naming every malformed variable"""
    global DEFAULT_WORKERS, SURVEY_DEFAULT_MAX_N, RECHECK_FRACTION, CRIT_EVAL_BUDGET, ANALYSIS_MAX_SETS

    problems = []
    converted = {}
    int_settings = {
        "GRAPHCRIT_WORKERS": (DEFAULT_WORKERS, 1),
        "GRAPHCRIT_SURVEY_MAX_N": (SURVEY_DEFAULT_MAX_N, SURVEY_MIN_N),
        "GRAPHCRIT_EVAL_BUDGET": (CRIT_EVAL_BUDGET, 0),
        "GRAPHCRIT_ANALYSIS_MAX_SETS": (ANALYSIS_MAX_SETS, 1),
    }
    for name, (raw, minimum) in int_settings.items():
        try:
            converted[name] = _as_int(name, str(raw), minimum)
        except ValueError as e:
            problems.append(f"{name}={raw!r} ({e})")

    try:
        fraction = float(RECHECK_FRACTION)
        if not 0.0 <= fraction <= 1.0:
            raise ValueError("must lie in [0, 1]")
        converted["GRAPHCRIT_RECHECK_FRACTION"] = fraction
    except ValueError as e:
        problems.append(f"GRAPHCRIT_RECHECK_FRACTION={RECHECK_FRACTION!r} ({e})")

    if problems:
        raise ValueError(f"Invalid configuration: {'; '.join(problems)}")

    if converted["GRAPHCRIT_SURVEY_MAX_N"] > SURVEY_LARGE_MAX_N:
        raise ValueError(f"GRAPHCRIT_SURVEY_MAX_N cannot exceed {SURVEY_LARGE_MAX_N}")

    DEFAULT_WORKERS = converted["GRAPHCRIT_WORKERS"]
    SURVEY_DEFAULT_MAX_N = converted["GRAPHCRIT_SURVEY_MAX_N"]
    CRIT_EVAL_BUDGET = converted["GRAPHCRIT_EVAL_BUDGET"]
    ANALYSIS_MAX_SETS = converted["GRAPHCRIT_ANALYSIS_MAX_SETS"]
    RECHECK_FRACTION = converted["GRAPHCRIT_RECHECK_FRACTION"]

    logger.debug("Configuration validated")


validate_config()
