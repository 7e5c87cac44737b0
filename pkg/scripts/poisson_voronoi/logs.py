from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

# Diagnostics go to stderr so CSV/JSON written to stdout stay clean.
console = Console(stderr=True)


def configure_logging(level: int = logging.INFO) -> None:
    """Install a single rich handler on the package logger.

    Library modules only ever call ``logging.getLogger(__name__)``; handlers
    are attached here, once, by the command-line front end.
    """

    logger = logging.getLogger("scripts.poisson_voronoi")
    logger.handlers.clear()
    handler = RichHandler(console=console, show_path=False, rich_tracebacks=True)
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


__all__ = ["configure_logging", "console"]
