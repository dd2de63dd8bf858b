"""
Writers for CLI results.

Every command produces a list of flat row dicts. JSON wraps them as
{meta: {subcommand, config, toolVersion}, data: rows}; CSV is the same rows
with a header line. Big integers are written as full decimal strings and
Fractions as "p/q".
"""
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from chordlab import __version__
from chordlab.config import OUTPUT_DIR
from chordlab.schemas.run_config import RunConfig
from chordlab.utils.logging_utils import logger


def resolve_output_path(path: Optional[str]) -> Optional[Path]:
    """Relative paths are taken against CHORDLAB_OUTPUT_DIR; None means stdout."""
    if not path:
        return None
    resolved = Path(path)
    if not resolved.is_absolute():
        resolved = Path(OUTPUT_DIR) / resolved
    return resolved


def _cell(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True, default=str)
    return value


def _clean(rows: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return [{key: _cell(v) for key, v in row.items()} for row in rows]


def render(rows: List[Dict[str, Any]], config: RunConfig, extra_meta: Optional[dict] = None) -> str:
    rows = _clean(rows)
    if config.output_format == "json":
        meta = {
            "subcommand": config.subcommand,
            "config": config.for_output(),
            "toolVersion": __version__,
            **(extra_meta or {}),
        }
        return json.dumps({"meta": meta, "data": rows}, indent=2, default=str) + "\n"

    if not rows:
        return ""
    # object dtype keeps Python ints exact and stops pandas from turning
    # int columns with gaps into floats
    frame = pd.DataFrame(rows, dtype=object)
    return frame.to_csv(index=False, lineterminator="\n")


def write_output(
    rows: List[Dict[str, Any]], config: RunConfig, extra_meta: Optional[dict] = None
) -> Optional[Path]:
    """Write rows to config.output_path, or to stdout when no path is given."""
    text = render(rows, config, extra_meta)
    path = resolve_output_path(config.output_path)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"[Output] wrote {len(rows)} rows to {path}")
    return path
