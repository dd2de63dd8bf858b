"""
Pydantic schemas for statistical estimates and asymptotic moment summaries.
"""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class McEstimate(BaseModel):
    """Monte Carlo bridge statistics over every bubble of size q seen in the samples"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    q: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    samples: int = Field(..., gt=0, description="Number of sampled diagrams")
    bubbles: int = Field(..., ge=0, description="Bubbles of size q observed")
    mean_bridges: Optional[float] = None
    var_bridges: Optional[float] = Field(None, ge=0)
    standard_error: Optional[float] = Field(None, ge=0)

    @property
    def is_empty(self) -> bool:
        return self.bubbles == 0

    @model_validator(mode="after")
    def check_empty_signal(self) -> "McEstimate":
        if self.bubbles == 0 and self.mean_bridges is not None:
            raise ValueError("an empty estimate carries no mean")
        if self.bubbles > 0 and self.mean_bridges is None:
            raise ValueError("mean_bridges is required when bubbles were observed")
        return self


class BridgeMoments(BaseModel):
    """Asymptotic mean and variance of the bridge count for bubbles of size q"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2)
    q: int = Field(..., ge=1)
    mean: float = Field(..., ge=0)
    variance: float = Field(..., ge=0)

    @model_validator(mode="after")
    def check_mean_bound(self) -> "BridgeMoments":
        if self.mean > self.q + 1e-9:
            raise ValueError("mean bridge count cannot exceed the bubble size")
        return self


class ShortChordMoments(BaseModel):
    """Asymptotic short-chord statistics of crystallized diagrams on n chords"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=4)
    kbar_leading: float = Field(..., gt=0)
    kbar_refined: float = Field(..., gt=0)
    variance: float = Field(..., gt=0)
    qbar: float = Field(..., gt=0)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)
