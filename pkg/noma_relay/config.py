"""Configuration management for noma-relay."""

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# Load environment variables from .env file
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(env_path)

# Parallel Monte Carlo (worker cap only, results never depend on it)
NOMA_THREADS: int = int(os.getenv("NOMA_THREADS", str(os.cpu_count() or 1)))

# Monte Carlo defaults
DEFAULT_MC_SAMPLES: int = int(os.getenv("NOMA_MC_SAMPLES", "1000000"))
DEFAULT_SEED: int = int(os.getenv("NOMA_SEED", "20190401"))
DEFAULT_CHUNK_SIZE: int = int(os.getenv("NOMA_CHUNK_SIZE", "250000"))

# Debug Configuration
DEBUG: bool = os.getenv("NOMA_DEBUG", "false").lower() == "true"
LOG_LEVEL: str = os.getenv("NOMA_LOG_LEVEL", "INFO")
LOG_FORMAT: str = os.getenv("NOMA_LOG_FORMAT", "text")

# Run log (structured JSON records of sweeps, figures and validation runs)
RUN_LOG_ENABLED: bool = os.getenv("NOMA_RUN_LOG_ENABLED", "true").lower() == "true"
RUN_LOG_FILE: Optional[str] = os.getenv("NOMA_RUN_LOG")


def setup_logging(log_format: Optional[str] = None) -> logging.Logger:
    """Set up logging configuration.

    Args:
        log_format: "text" or "json"; defaults to NOMA_LOG_FORMAT
    """
    handler = logging.StreamHandler()
    if (log_format or LOG_FORMAT).lower() == "json":
        from .logging import JsonLogFormatter

        handler.setFormatter(JsonLogFormatter())
    else:
        handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )

    # Configure root logger
    level = logging.DEBUG if DEBUG else getattr(logging, LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, handlers=[handler], force=True)

    # Get logger for our application
    logger = logging.getLogger("noma-relay")

    # fastmcp and its transport are chatty at INFO
    if not DEBUG:
        logging.getLogger("fastmcp").setLevel(logging.WARNING)
        logging.getLogger("mcp").setLevel(logging.WARNING)

    return logger
