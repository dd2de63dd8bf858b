#!/usr/bin/env python
"""
RQ worker startup script.

Usage:
    python scripts/run_worker.py

This script starts an RQ worker that processes jobs from the 'figures' queue
(submitted with `chordlab figure ... --enqueue`). Run it next to a Redis
server reachable at REDIS_URL.
"""
import sys
import os

# Add parent directory to path so we can import chordlab
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from rq import Worker
from chordlab.workers.queue import get_figure_queue, get_redis_connection
from chordlab.utils.logging_utils import logger


def main():
    """Start the RQ worker for figure jobs."""
    logger.info("Starting RQ worker for figures queue...")

    figure_queue = get_figure_queue()
    if figure_queue is None:
        logger.error("No Redis connection; cannot start the figure worker")
        return 1

    worker = Worker([figure_queue], connection=get_redis_connection())

    logger.info(f"Worker listening on queue: {figure_queue.name}")
    logger.info("Press Ctrl+C to stop")

    try:
        worker.work()
    except KeyboardInterrupt:
        logger.info("Worker stopped by user")
    except Exception as e:
        logger.error(f"Worker crashed: {str(e)}")
        raise
    return 0


if __name__ == "__main__":
    sys.exit(main())
