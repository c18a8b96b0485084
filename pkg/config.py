"""
Configuration settings for the megagreedoid invariants toolkit
"""
import os
from dotenv import load_dotenv

load_dotenv()


def _env_flag(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def _env_int(name: str, default):
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    return int(value)


class Config:
    """Configuration class for the toolkit"""

    # Ground-set bound (every subset fits a 16-bit mask)
    MAX_GROUND_SIZE = _env_int("MEGAGREEDOID_MAX_GROUND_SIZE", 16)

    # Descent reading: "greedy" (default) or "literal" (diagnostic)
    DESCENT_READING = os.getenv("MEGAGREEDOID_DESCENT_READING", "greedy")

    # Node budget for the backtracking search used when the greedy facet order
    # is not a shelling
    SHELLING_SEARCH_BUDGET = _env_int("MEGAGREEDOID_SHELLING_SEARCH_BUDGET", 50000)

    # Corpus Configuration
    CORPUS_SEED = _env_int("MEGAGREEDOID_CORPUS_SEED", 2024)
    CORPUS_SIZE = _env_int("MEGAGREEDOID_CORPUS_SIZE", 60)
    CORPUS_MAX_GROUND = _env_int("MEGAGREEDOID_CORPUS_MAX_GROUND", 5)

    # Oracle Configuration (None means |I| + 1 colours)
    ORACLE_MAX_N = _env_int("MEGAGREEDOID_ORACLE_MAX_N", None)

    # Output Configuration
    OUTPUT_DIR = os.getenv("MEGAGREEDOID_OUTPUT_DIR", "verification_outputs")
    REPORT_FILE = "verification_report.md"
    SUMMARY_FILE = "verification_summary.json"

    VERBOSE = _env_flag("MEGAGREEDOID_VERBOSE")

    @classmethod
    def validate_config(cls):
        """Validate that configuration values are usable"""
        if not 0 <= cls.MAX_GROUND_SIZE <= 16:
            raise ValueError("MEGAGREEDOID_MAX_GROUND_SIZE must lie between 0 and 16")
        if cls.DESCENT_READING not in ("greedy", "literal"):
            raise ValueError("MEGAGREEDOID_DESCENT_READING must be 'greedy' or 'literal'")
        if cls.CORPUS_SIZE < 0 or cls.CORPUS_MAX_GROUND < 1:
            raise ValueError("corpus size must be nonnegative and the corpus ground bound positive")
        if cls.SHELLING_SEARCH_BUDGET < 1:
            raise ValueError("MEGAGREEDOID_SHELLING_SEARCH_BUDGET must be positive")
        if cls.ORACLE_MAX_N is not None and cls.ORACLE_MAX_N < 1:
            raise ValueError("MEGAGREEDOID_ORACLE_MAX_N must be positive")
        return True
