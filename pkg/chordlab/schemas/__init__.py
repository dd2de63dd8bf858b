"""
Pydantic schemas for everything that crosses the CLI boundary: run
configuration, estimates, certificates and simulation statistics.
"""

from .estimates import BridgeMoments, McEstimate, ShortChordMoments
from .process import CrystallizationStats
from .run_config import RunConfig, SelfTestResult
from .spectra import SpectrumReport

__all__ = [
    "BridgeMoments",
    "CrystallizationStats",
    "McEstimate",
    "RunConfig",
    "SelfTestResult",
    "ShortChordMoments",
    "SpectrumReport",
]
