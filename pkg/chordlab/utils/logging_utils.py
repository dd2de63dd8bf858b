"""
Centralized logging configuration for chordlab.

Provides:
- Structured logging with run context (subcommand, seed, threads)
- Operation timing with slow-operation detection
- Error logging with full context
"""

import logging
import sys
import time
from contextlib import contextmanager
from contextvars import ContextVar
from functools import wraps
from typing import Any, Dict

from chordlab.config import LOG_LEVEL, SLOW_OPERATION_THRESHOLD_MS

# Configure root logger. stderr keeps stdout free for data written by the CLI.
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format='%(asctime)s [%(levelname)s] %(name)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)

# Create logger for the package
logger = logging.getLogger('chordlab')

_run_context: ContextVar[Dict[str, Any]] = ContextVar("chordlab_run_context", default={})


@contextmanager
def run_context(**values):
    """Bind run-level context (subcommand, seed, threads) for the duration of a block."""
    token = _run_context.set({**_run_context.get(), **values})
    try:
        yield
    finally:
        _run_context.reset(token)


def get_run_context() -> Dict[str, Any]:
    """Context of the current run, empty outside the CLI."""
    return dict(_run_context.get())


def log_operation(operation_name: str, duration_ms: float, **context):
    """
    Log the duration of a computation.

    Args:
        operation_name: Name of the operation (e.g. "census", "rnk_row")
        duration_ms: Wall time in milliseconds
        **context: Operation parameters worth seeing in the log (n, k, samples...)
    """
    log_data = {
        'operation': operation_name,
        'duration_ms': round(duration_ms, 2),
        **context,
        **get_run_context(),
    }

    if duration_ms > SLOW_OPERATION_THRESHOLD_MS:
        logger.warning(f"Slow operation: {log_data}")
    else:
        logger.info(f"Operation completed: {log_data}")


def log_error(error: Exception, context_message: str = ""):
    """
    Log errors with full context.

    Args:
        error: The exception that occurred
        context_message: Additional context about what was being attempted
    """
    log_data = {
        'error_type': type(error).__name__,
        'error_message': str(error),
        'context': context_message,
        **get_run_context(),
    }

    logger.error(f"Error occurred: {log_data}", exc_info=True)


def timing_logger(operation_name: str):
    """
    Decorator to log operation timing.

    Usage:
        @timing_logger("count_nqb")
        def count_nqb(n):
            ...
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                duration_ms = (time.perf_counter() - start_time) * 1000
                log_operation(operation_name, duration_ms, status="failed")
                log_error(e, f"Error in {operation_name}")
                raise
            duration_ms = (time.perf_counter() - start_time) * 1000
            log_operation(operation_name, duration_ms, args=_short_args(args, kwargs), status="ok")
            return result

        return wrapper

    return decorator


def _short_args(args, kwargs) -> str:
    parts = [repr(a) for a in args if isinstance(a, (int, float, str))]
    parts += [f"{k}={v!r}" for k, v in kwargs.items() if isinstance(v, (int, float, str))]
    return ", ".join(parts)
