"""Structured logging configuration for seqspec."""

import sys
from pathlib import Path

from loguru import logger


def configure_logging(level: str = "INFO", json_path: str | Path | None = None):
    """Configure Loguru: readable stderr sink, optional JSON-lines file sink.

    Args:
        level: Minimum level for the stderr sink
        json_path: When given, every record at DEBUG and above is also
            serialized to this file (rotated at 100 MB)
    """
    logger.remove()  # Remove default handler

    logger.add(
        sys.stderr,
        level=level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{message}</cyan>",
    )

    if json_path is not None:
        logger.add(
            str(json_path),
            serialize=True,  # JSON output
            rotation="100 MB",
            retention=5,
            level="DEBUG",
            diagnose=False,
        )

    return logger
