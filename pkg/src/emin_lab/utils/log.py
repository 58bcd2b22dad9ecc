# src/emin_lab/utils/log.py
"""
Logging setup: the stdlib logging tree rendered through rich.
"""

import logging
import threading

from rich.console import Console
from rich.logging import RichHandler

from emin_lab.config import LOG_LEVEL

_ROOT = "emin_lab"
_configured = False
# Monte Carlo workers may reach get_logger concurrently.
_lock = threading.Lock()

# Diagnostics go to stderr so CSV/JSON on stdout stays clean.
log_console = Console(stderr=True)


def configure_logging(level: str | int | None = None) -> None:
    """Attach a RichHandler to the package logger. Safe to call more than once."""
    global _configured
    logger = logging.getLogger(_ROOT)
    with _lock:
        if not _configured:
            handler = RichHandler(console=log_console, show_path=False, rich_tracebacks=True)
            handler.setFormatter(logging.Formatter("%(message)s"))
            logger.addHandler(handler)
            logger.propagate = False
            _configured = True
        logger.setLevel(level if level is not None else LOG_LEVEL.upper())


def get_logger(name: str) -> logging.Logger:
    """Return a child of the package logger, configuring it on first use."""
    if not _configured:
        configure_logging()
    if not name.startswith(_ROOT):
        name = f"{_ROOT}.{name}"
    return logging.getLogger(name)
