# app/config.py
import os
import sys
import logging
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} is not an integer, using {default}")
        return default


def _choice_env(name: str, default: str, choices: tuple) -> str:
    raw = (os.getenv(name) or default).strip().lower()
    if raw not in choices:
        logger.warning(f"{name}={raw!r} is not one of {choices}, using {default!r}")
        return default
    return raw


# --- CLI defaults -----------------------------------------------------
DEFAULT_POLICY = _choice_env("ORDINAL_DEFAULT_POLICY", "smallest", ("none", "smallest", "largest"))
DEFAULT_KIND = _choice_env("ORDINAL_DEFAULT_KIND", "amp", ("orp", "amp"))
DEFAULT_FORMAT = _choice_env("ORDINAL_DEFAULT_FORMAT", "json", ("json", "csv"))
DEFAULT_M = _int_env("ORDINAL_DEFAULT_M", 3)
DEFAULT_TAU = _int_env("ORDINAL_DEFAULT_TAU", 1)

# --- Enumeration guards -----------------------------------------------
MAX_CATALOG_M = _int_env("ORDINAL_MAX_CATALOG_M", 6)
MAX_ALPHABET = _int_env("ORDINAL_MAX_ALPHABET", 7)
MAX_UNIVERSE = _int_env("ORDINAL_MAX_UNIVERSE", 6 ** 6)

# --- verify -----------------------------------------------------------
VERIFY_DIMENSIONS = tuple(
    int(d) for d in (os.getenv("ORDINAL_VERIFY_DIMENSIONS") or "2,3,4").split(",") if d.strip()
)
MAX_WITNESSES = _int_env("ORDINAL_MAX_WITNESSES", 5)

LOG_LEVEL = (os.getenv("ORDINAL_LOG_LEVEL") or "WARNING").upper()


def configure_logging(level: str = LOG_LEVEL) -> None:
    """Logs always go to stderr; stdout carries only command output."""
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
