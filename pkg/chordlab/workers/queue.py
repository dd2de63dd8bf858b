"""
RQ (Redis Queue) connection for background figure jobs.

Redis is optional: without it every command still runs inline, and only
`figure --enqueue` is unavailable.
"""
from typing import Optional

import redis
from rq import Queue

from chordlab.config import FIGURE_JOB_TIMEOUT_MINUTES, REDIS_URL
from chordlab.utils.logging_utils import logger

_redis_conn = None
_figure_queue = None


def get_redis_connection():
    """Shared Redis connection, or None when Redis cannot be reached."""
    global _redis_conn
    if _redis_conn is not None:
        return _redis_conn
    try:
        conn = redis.from_url(REDIS_URL)
        # Test the connection
        conn.ping()
    except (redis.ConnectionError, redis.TimeoutError, Exception) as e:
        logger.warning(f"[Workers] Redis not available: {str(e)}")
        logger.warning("[Workers] Figure jobs can only run inline")
        return None
    logger.info("[Workers] Redis connection established successfully")
    _redis_conn = conn
    return conn


def get_figure_queue() -> Optional[Queue]:
    """The 'figures' queue, created on first use."""
    global _figure_queue
    if _figure_queue is None:
        conn = get_redis_connection()
        if conn is None:
            return None
        _figure_queue = Queue(
            "figures", connection=conn, default_timeout=FIGURE_JOB_TIMEOUT_MINUTES * 60
        )
    return _figure_queue
