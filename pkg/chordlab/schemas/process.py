"""
Pydantic schema for crystallization process experiments.
"""

from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CrystallizationStats(BaseModel):
    """Histograms collected over independent runs of the crystallization process"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    trials: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    max_steps: int = Field(..., ge=1)
    timeouts: int = Field(0, ge=0)
    stopping_times: Dict[int, int] = Field(default_factory=dict, description="attempted steps -> runs")
    applied_moves: Dict[int, int] = Field(default_factory=dict, description="applied swaps -> runs")
    final_k: Dict[int, int] = Field(default_factory=dict, description="short chords at stop -> runs")
    reference: Optional[Dict[int, float]] = Field(None, description="R_{n,k} / sum_k R_{n,k}")
    tv_distance: Optional[float] = Field(None, ge=0, le=1)
    mean_final_k: Optional[float] = None
    kbar_refined: Optional[float] = None

    @model_validator(mode="after")
    def check_histogram_mass(self) -> "CrystallizationStats":
        for name in ("stopping_times", "applied_moves", "final_k"):
            mass = sum(getattr(self, name).values()) + self.timeouts
            if mass != self.trials:
                raise ValueError(f"{name} holds {mass} runs, expected {self.trials}")
        return self
