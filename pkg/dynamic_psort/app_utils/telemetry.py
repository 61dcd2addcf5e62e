import logging
import os

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: str | None = None) -> str:
    """Configure stderr logging for the CLI; stdout stays machine-readable."""
    name = (level or os.environ.get("DPS_LOG_LEVEL") or "WARNING").upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        logging.basicConfig(level=logging.WARNING, format=_FORMAT)
        logging.warning(f"Unknown log level {name!r}, falling back to WARNING")
        return "WARNING"

    logging.basicConfig(level=numeric, format=_FORMAT, force=True)
    if numeric <= logging.DEBUG:
        logging.info("Verbose logging enabled - per-operation engine detail on stderr")
    else:
        logging.info(
            "Per-operation logging disabled (set DPS_LOG_LEVEL=DEBUG or --log-level DEBUG to enable)"
        )
    return name
