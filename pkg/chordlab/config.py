# chordlab/config.py
import os
import multiprocessing

def _bool(env_name: str, default: bool = False) -> bool:
    return os.getenv(env_name, str(default)).strip().lower() in {"1", "true", "yes", "on"}

def _int(env_name: str, default: int) -> int:
    try:
        return int(os.getenv(env_name, default))
    except (TypeError, ValueError):
        return default

# --- Logging -----------------------------------------------------------------
# Options: "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"
LOG_LEVEL = os.getenv("CHORDLAB_LOG_LEVEL", "INFO").upper()

# Operations slower than this are logged at WARNING
SLOW_OPERATION_THRESHOLD_MS = _int("CHORDLAB_SLOW_OPERATION_MS", 30_000)

# --- Output ------------------------------------------------------------------
# The only environment override that touches CLI output: relative --output
# paths are resolved against this directory.
OUTPUT_DIR = os.getenv("CHORDLAB_OUTPUT_DIR", ".")

# --- Reproducibility ---------------------------------------------------------
# Fixed default seed. Never derived from the clock.
DEFAULT_SEED = _int("CHORDLAB_DEFAULT_SEED", 1729)

# --- Capacities --------------------------------------------------------------
# Exhaustive enumeration visits (2n-1)!! diagrams: 34,459,425 at n=9.
ENUMERATION_CAP = _int("CHORDLAB_ENUMERATION_CAP", 9)

# The composition sum behind psi has C(N+E-1, E-1) terms.
PSI_MAX_TERMS = _int("CHORDLAB_PSI_MAX_TERMS", 20_000_000)

# Largest n for the scalable path to R_{n,k}
SCALABLE_CAP = _int("CHORDLAB_SCALABLE_CAP", 1000)

# --- Parallelism -------------------------------------------------------------
# 0 means "all cores". Work units below are fixed so results never depend on it.
THREADS = _int("CHORDLAB_THREADS", 0)
MC_CHUNK = _int("CHORDLAB_MC_CHUNK", 5000)
TRIAL_CHUNK = _int("CHORDLAB_TRIAL_CHUNK", 250)

# --- Crystallization process -------------------------------------------------
MAX_STEPS = _int("CHORDLAB_MAX_STEPS", 10_000_000)

# Validate the diagram after every move (slow; meant for debugging runs)
DEBUG_CHECKS = _bool("CHORDLAB_DEBUG_CHECKS", False)

# --- Error Reporting ---------------------------------------------------------
SENTRY_DSN = os.getenv("SENTRY_DSN", "")

# --- Figure queue (RQ) -------------------------------------------------------
REDIS_URL = os.getenv("REDIS_URL", "redis://localhost:6379/0")
FIGURE_JOB_TIMEOUT_MINUTES = _int("CHORDLAB_FIGURE_JOB_TIMEOUT_MINUTES", 120)


def resolve_threads(requested: int | None = None) -> int:
    """Number of worker processes for a run (requested, then env, then all cores)."""
    value = requested if requested is not None else THREADS
    if value is None or value <= 0:
        return multiprocessing.cpu_count() or 1
    return value
