import os
from logging import (
    DEBUG,
    INFO,
    WARNING,
    Formatter,
    Logger,
    StreamHandler,
    getLevelName,
    getLogger,
)

LOGGER_NAME = "lexkit"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def _level_from_env(default: int) -> int:
    raw = os.getenv("LEXKIT_LOG_LEVEL", "").strip()
    if not raw:
        return default
    if raw.isdigit():
        return int(raw)
    resolved = getLevelName(raw.upper())
    return resolved if isinstance(resolved, int) else default


def get_logger(level: int | None = None) -> Logger:
    """
    Return the package logger, attaching a stderr handler on first use.

    The level is only applied when the handler is created; an explicitly
    configured logger keeps its own handlers and level.

    Args:
        level: Initial level. Defaults to ``LEXKIT_LOG_LEVEL`` or INFO.
    """
    logger = getLogger(LOGGER_NAME)

    if not logger.hasHandlers():
        if level is None:
            level = _level_from_env(INFO)
        handler = StreamHandler()

        logger.setLevel(level)
        handler.setLevel(level)
        handler.setFormatter(Formatter(LOG_FORMAT))

        logger.addHandler(handler)

    return logger


def set_verbosity(verbose: bool) -> Logger:
    """Switch the package logger and its own handlers to DEBUG or WARNING."""
    logger = get_logger()
    level = DEBUG if verbose else WARNING
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)
    return logger
