"""
Logging Configuration
structlog on top of stdlib logging; records go to stderr so stdout stays
reserved for estimates, tables and CSV output
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, TextIO

import structlog

from config.settings import get_settings

settings = get_settings()


def _renderer(log_format: str):
    if log_format == "json" or settings.is_production:
        return structlog.processors.JSONRenderer(sort_keys=True)
    return structlog.dev.ConsoleRenderer(colors=False)


def configure_logging(
    log_level: Optional[str] = None,
    log_format: Optional[str] = None,
    log_file: Optional[str] = None,
    stream: Optional[TextIO] = None,
) -> None:
    """
    Configure structured logging

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        log_format: json or text
        log_file: Optional rotating log file receiving the same records
        stream: Console stream (stderr when None)
    """
    log_format = log_format or settings.LOG_FORMAT
    log_file = log_file or settings.LOG_FILE
    level = getattr(logging, (log_level or settings.LOG_LEVEL).upper(), logging.INFO)

    handlers = [logging.StreamHandler(stream or sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(RotatingFileHandler(
            log_file,
            maxBytes=settings.LOG_MAX_BYTES,
            backupCount=settings.LOG_BACKUP_COUNT,
            encoding="utf-8",
        ))
    logging.basicConfig(format="%(message)s", level=level, handlers=handlers, force=True)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.format_exc_info,
            _renderer(log_format),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )


def get_logger(name: Optional[str] = None) -> structlog.stdlib.BoundLogger:
    """Logger bound to a module name"""
    return structlog.get_logger(name)


configure_logging()

__all__ = ['get_logger', 'configure_logging']
