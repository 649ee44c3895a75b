# config.py
import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file (local overrides only)
load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    """Read an integer environment variable, falling back to the default."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


# Application settings
APP_NAME = "hnlat"
APP_VERSION = "0.3.0"

# Enumeration settings
HNLAT_THREADS = _int_env("HNLAT_THREADS", 1)
HNLAT_MAX_NODES = _int_env("HNLAT_MAX_NODES", 1_000_000)

# Oracle refuses boxes with more points than this
HNLAT_ORACLE_MAX_POINTS = _int_env("HNLAT_ORACLE_MAX_POINTS", 100_000_000)

LOG_LEVEL = os.getenv("HNLAT_LOG_LEVEL", "WARNING").upper()
