"""sqfree: square avoidance over finite sets of square lengths."""

__version__ = "0.1.0"


from dataclasses import dataclass, field

from .config import set_env_vars


@dataclass
class DefaultConfig:
    """Default configuration for the sqfree application."""

    LETTERS: str = "abcdefghijklmnopqrstuvwxyz"
    # Symbols used when printing generic words (one per block).
    GENERIC_SYMBOLS: str = (
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
    )
    WALK_STEPS: int = 1000
    SIMULATE_STEPS: int = 100_000
    SIMULATE_TRIALS: int = 1
    K_MAX_MARGIN: int = 2
    ORACLE_WORD_LENGTH: int = 12
    ORACLE_LETTERS: int = 3
    VERIFY_WALK_STEPS: int = 10_000
    # seeded r = 4 draws checked against the minA predictor
    PREDICTOR_SAMPLE: int = 12
    PREDICTOR_SAMPLE_LARGEST: int = 10
    AUDIT_GRID: dict[str, int] = field(
        default_factory=lambda: {"r": 3, "i1": 7, "l": 3}
    )


# Create a singleton instance of DefaultConfig
default_config = DefaultConfig()

set_env_vars()
