"""
Figure job: compute one data series and write it where the CLI would have.
"""
from typing import Optional

from chordlab.figures import build_series
from chordlab.schemas.run_config import RunConfig
from chordlab.utils.logging_utils import log_error, logger, run_context
from chordlab.utils.output import write_output


def run_figure_job(target: str, params: dict, config: dict) -> Optional[str]:
    """
    Execute a figure series job.

    Args:
        target: "bridge-moments", "kmean" or "rs"
        params: Keyword arguments of the series builder
        config: RunConfig.model_dump() of the submitting command

    Returns:
        The written path, or None when the series went to stdout.
    """
    run_config = RunConfig(**config)
    with run_context(subcommand="figure", target=target, seed=run_config.seed, job=True):
        logger.info(f"[FigureJob] starting {target} with {params}")
        try:
            rows = build_series(target, **params)
            path = write_output(rows, run_config)
        except Exception as e:
            log_error(e, f"Figure job {target} failed")
            raise
        logger.info(f"[FigureJob] {target} finished with {len(rows)} rows")
        return None if path is None else str(path)
