from __future__ import annotations

import logging
from logging.config import dictConfig
from typing import Iterable, Sequence

from settings import get_settings

CONTEXT_KEYS = (
    "instance",
    "vertex_count",
    "edge_count",
    "cluster_count",
    "outcome",
    "tier",
    "equations",
    "variables",
    "rank",
    "case",
    "face",
    "reason",
    "elapsed_ms",
)

FALLBACK_LEVEL = "INFO"

_configured = False


def _render_value(value: object) -> str:
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else value
        return ",".join(str(item) for item in items)
    return str(value)


class ContextualFormatter(logging.Formatter):
    """Appends ``key=value`` for the context keys a record carries in ``extra``."""

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        style: str = "%",
        extra_keys: Iterable[str] | None = None,
    ) -> None:
        super().__init__(fmt=fmt, datefmt=datefmt, style=style)
        self._context_keys: Sequence[str] = tuple(extra_keys or CONTEXT_KEYS)

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        context = [
            f"{key}={_render_value(value)}"
            for key in self._context_keys
            if (value := getattr(record, key, None)) is not None
        ]
        return f"{message} | {' '.join(context)}" if context else message


def resolve_level(level: str | int | None) -> str | int:
    """A level dictConfig accepts; unknown names fall back to INFO."""
    if level is None:
        level = get_settings().log_level
    if isinstance(level, int):
        return level
    name = level.strip().upper()
    return name if isinstance(logging.getLevelName(name), int) else FALLBACK_LEVEL


def configure_logging(level: str | int | None = None) -> None:
    """Install the contextual stderr handler on the root logger, once per process."""
    global _configured
    if _configured:
        return

    log_level = resolve_level(level)
    dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "contextual": {
                    "()": "logging_config.ContextualFormatter",
                    "fmt": "%(asctime)sZ | %(levelname)s | %(name)s | %(message)s",
                    "datefmt": "%Y-%m-%dT%H:%M:%S",
                    "extra_keys": list(CONTEXT_KEYS),
                }
            },
            "handlers": {
                "stderr": {
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr",
                    "level": log_level,
                    "formatter": "contextual",
                }
            },
            "root": {"handlers": ["stderr"], "level": log_level},
        }
    )
    if isinstance(level, str) and level.strip().upper() != log_level:
        logging.getLogger(__name__).warning("Unknown log level, using INFO", extra={"reason": level})

    _configured = True
