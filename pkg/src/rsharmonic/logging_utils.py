"""
Performance tracking and formatting helpers for rsharmonic logs.
"""

import os
import time
from functools import wraps
from typing import Any, Callable, Dict, Optional

from loguru import logger


def _env_threshold(default: float = 1000.0) -> float:
    raw = os.getenv("RSH_PERFORMANCE_THRESHOLD_MS")
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        return default


class PerformanceTracker:
    """Log the duration of decorated calls that exceed a threshold."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        enabled = os.getenv("RSH_PERFORMANCE_ENABLED", "true").lower() in ("true", "1", "yes", "on")
        self.enabled = self.config.get("enabled", enabled)
        self.threshold_ms = self.config.get("threshold_ms", _env_threshold())
        self.include_args = self.config.get("include_args", False)

    def track_performance(
        self,
        operation_name: Optional[str] = None,
        log_args: Optional[bool] = None,
        threshold_ms: Optional[float] = None,
    ) -> Callable[[Callable], Callable]:
        """Decorator timing ``func``; failures are logged and re-raised."""

        def decorator(func: Callable) -> Callable:
            @wraps(func)
            def wrapper(*args: Any, **kwargs: Any) -> Any:
                if not self.enabled:
                    return func(*args, **kwargs)

                op_name = operation_name or f"{func.__module__}.{func.__name__}"
                threshold = self.threshold_ms if threshold_ms is None else threshold_ms
                with_args = self.include_args if log_args is None else log_args
                start = time.perf_counter()
                success = False
                try:
                    result = func(*args, **kwargs)
                    success = True
                    return result
                finally:
                    duration_ms = (time.perf_counter() - start) * 1000.0
                    if duration_ms >= threshold or not success:
                        fields: Dict[str, Any] = {
                            "operation": op_name,
                            "duration_ms": round(duration_ms, 2),
                            "success": success,
                            "performance": True,
                        }
                        if with_args and kwargs:
                            fields["kwargs"] = LogFormatter.truncate(repr(kwargs), 200)
                        logger.info(
                            "Performance: {} took {}",
                            op_name,
                            LogFormatter.format_duration(duration_ms / 1000.0),
                            **fields,
                        )

            return wrapper

        return decorator


class LogFormatter:
    """Human-readable renderings used in logs and CLI summaries."""

    @staticmethod
    def format_duration(duration_seconds: float) -> str:
        if duration_seconds < 1:
            return f"{duration_seconds * 1000:.1f}ms"
        if duration_seconds < 60:
            return f"{duration_seconds:.2f}s"
        minutes, seconds = divmod(duration_seconds, 60)
        return f"{int(minutes)}m {seconds:.1f}s"

    @staticmethod
    def truncate(text: str, max_length: int = 200) -> str:
        if len(text) <= max_length:
            return text
        return text[: max_length - 3] + "..."


__all__ = ["PerformanceTracker", "LogFormatter"]
