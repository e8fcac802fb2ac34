"""
Environment-aware loguru configuration for rsharmonic.

Sweeps and shooting runs log under a correlation id so that every line a
certificate run produces can be grouped afterwards, including in the JSON
Lines sink.
"""

import os
import sys
import uuid
from contextvars import ContextVar
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from loguru import logger

APP_NAME = "rsharmonic"
ENV_PREFIX = "RSH_"

correlation_id: ContextVar[str] = ContextVar("correlation_id", default="")

_FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {name}:{function}:{line} | "
    "{extra[correlation_id]} | {message} | {extra}"
)


def _profile(level: str, console: bool, structured: bool, **overrides: Any) -> Dict[str, Any]:
    profile = {
        "level": level,
        "console_format": "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan> | <level>{message}</level>",
        "file_format": _FILE_FORMAT,
        "console_enabled": console,
        "file_enabled": True,
        "structured_enabled": structured,
        "rotation": "10 MB",
        "retention": "7 days",
        "compression": "zip",
    }
    profile.update(overrides)
    return profile


class LogConfig:
    """Logging profile for one environment plus RSH_* overrides."""

    ENVIRONMENTS: Dict[str, Dict[str, Any]] = {
        "local": _profile("INFO", console=True, structured=False),
        "dev": _profile(
            "DEBUG",
            console=True,
            structured=True,
            console_format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | <level>{message}</level> | {extra}",
            rotation="50 MB",
            retention="14 days",
        ),
        "test": _profile(
            "WARNING",
            console=False,
            structured=False,
            rotation="20 MB",
            retention="3 days",
            compression="gz",
        ),
        "stage": _profile(
            "INFO",
            console=True,
            structured=True,
            console_format="{time:HH:mm:ss} | {level: <8} | {message}",
            rotation="100 MB",
            retention="30 days",
            compression="gz",
        ),
        "prod": _profile(
            "INFO",
            console=False,
            structured=True,
            rotation="500 MB",
            retention="90 days",
            compression="gz",
        ),
    }

    _OVERRIDES = {
        "LOG_LEVEL": "level",
        "LOG_CONSOLE": "console_enabled",
        "LOG_FILE": "file_enabled",
        "LOG_STRUCTURED": "structured_enabled",
        "LOG_ROTATION": "rotation",
        "LOG_RETENTION": "retention",
        "LOG_COMPRESSION": "compression",
    }
    _FLAGS = {"console_enabled", "file_enabled", "structured_enabled"}

    def __init__(
        self,
        environment: Optional[str] = None,
        log_dir: Optional[str] = None,
        app_name: str = APP_NAME,
    ):
        self.environment = environment or os.getenv(f"{ENV_PREFIX}ENV", "local")
        self.log_dir = Path(log_dir or os.getenv(f"{ENV_PREFIX}LOG_DIR", "logs"))
        self.app_name = app_name
        self.config = dict(self.ENVIRONMENTS.get(self.environment, self.ENVIRONMENTS["local"]))
        self._apply_env_overrides()
        if self.config["file_enabled"] or self.config["structured_enabled"]:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def _apply_env_overrides(self) -> None:
        for suffix, key in self._OVERRIDES.items():
            value = os.getenv(f"{ENV_PREFIX}{suffix}")
            if value is None:
                continue
            if key in self._FLAGS:
                self.config[key] = value.strip().lower() in ("true", "1", "yes", "on")
            elif key == "compression" and value.strip().lower() == "none":
                self.config[key] = None
            else:
                self.config[key] = value

    def get_log_files(self) -> Dict[str, Path]:
        stamp = datetime.now().strftime("%Y%m%d")
        return {
            "main": self.log_dir / f"{self.app_name}-{stamp}.log",
            "error": self.log_dir / f"{self.app_name}-error-{stamp}.log",
            "structured": self.log_dir / f"{self.app_name}-structured-{stamp}.jsonl",
        }


def setup_logging(
    environment: Optional[str] = None,
    log_dir: Optional[str] = None,
    app_name: str = APP_NAME,
    correlation_id_value: Optional[str] = None,
    level: Optional[str] = None,
) -> LogConfig:
    """Replace all loguru sinks with the profile of ``environment``.

    Console output goes to stderr so that CSV and JSON on stdout stay clean.
    ``level`` wins over both the profile and RSH_LOG_LEVEL.
    """
    logger.remove()
    logger.enable(APP_NAME)
    log_config = LogConfig(environment, log_dir, app_name)
    if level:
        log_config.config["level"] = level
    files = log_config.get_log_files()
    cfg = log_config.config

    correlation_id_value = correlation_id_value or uuid.uuid4().hex[:8]
    correlation_id.set(correlation_id_value)
    logger.configure(extra={"correlation_id": correlation_id_value})

    if cfg["console_enabled"]:
        logger.add(
            sys.stderr,
            format=cfg["console_format"],
            level=cfg["level"],
            colorize=True,
            backtrace=False,
            diagnose=False,
        )

    if cfg["file_enabled"]:
        common = dict(
            format=cfg["file_format"],
            rotation=cfg["rotation"],
            retention=cfg["retention"],
            compression=cfg["compression"],
            backtrace=True,
            diagnose=False,
        )
        logger.add(str(files["main"]), level=cfg["level"], **common)
        logger.add(str(files["error"]), level="ERROR", **common)

    if cfg["structured_enabled"]:
        logger.add(
            str(files["structured"]),
            level=cfg["level"],
            rotation=cfg["rotation"],
            retention=cfg["retention"],
            compression=cfg["compression"],
            serialize=True,
            enqueue=True,
        )

    logger.debug(
        "Logging initialized",
        environment=log_config.environment,
        level=cfg["level"],
        log_dir=str(log_config.log_dir),
    )
    return log_config


def get_logger(name: Optional[str] = None) -> Any:
    """Logger bound to ``name``; the correlation id comes from the active context."""
    return logger.bind(logger_name=name or APP_NAME)


def set_correlation_id(new_id: str) -> str:
    """Install ``new_id`` and return the previous correlation id."""
    old_id = correlation_id.get("")
    correlation_id.set(new_id)
    logger.configure(extra={"correlation_id": new_id})
    return old_id


def get_correlation_id() -> str:
    return correlation_id.get("")


class LogContext:
    """Scope log records under a correlation id and extra fields."""

    def __init__(self, correlation_id_value: Optional[str] = None, **extra_fields: Any):
        self.correlation_id_value = correlation_id_value or uuid.uuid4().hex[:8]
        self.extra_fields = extra_fields
        self._token = None
        self._previous_extra: Dict[str, Any] = {}

    def __enter__(self) -> "LogContext":
        self._token = correlation_id.set(self.correlation_id_value)
        self._previous_extra = dict(logger._core.extra)
        extra = dict(self._previous_extra)
        extra.update(self.extra_fields)
        extra["correlation_id"] = self.correlation_id_value
        logger.configure(extra=extra)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        correlation_id.reset(self._token)
        logger.configure(extra=self._previous_extra)


def log_operation_start(operation: str, **context: Any) -> str:
    """Log the start of a command and return the id that tags its records."""
    op_id = uuid.uuid4().hex[:8]
    with LogContext(op_id, operation=operation):
        logger.info(f"Starting {operation}", **context)
    return op_id


def log_operation_end(
    operation: str, correlation_id_value: str, success: bool = True, **context: Any
) -> None:
    with LogContext(correlation_id_value, operation=operation):
        status = "completed" if success else "failed"
        logger.info(f"{operation} {status}", success=success, **context)


__all__ = [
    "LogConfig",
    "setup_logging",
    "get_logger",
    "set_correlation_id",
    "get_correlation_id",
    "LogContext",
    "log_operation_start",
    "log_operation_end",
    "logger",
]
