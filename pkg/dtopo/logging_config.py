import logging
import sys
from typing import Optional

from dtopo.settings import settings


def setup_logging(level: Optional[str] = None):
    """Configure application logging.

    Reports are written to stdout by the CLI, so log records go to stderr
    and, when LOG_FILE is set, to that file.
    """
    level_name = (level or settings.LOG_LEVEL).upper()

    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        handlers.append(logging.FileHandler(settings.LOG_FILE, encoding='utf-8'))

    # Configure root logger
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )

    # Reduce noise from external libraries
    logging.getLogger("networkx").setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.info(f"Logging configured with level: {level_name}")

    return logger

def get_logger(name: str) -> logging.Logger:
    """Get a logger instance for the given name."""
    return logging.getLogger(name)
