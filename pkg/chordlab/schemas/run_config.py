"""
Pydantic schemas for CLI runs and self-test results.
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from chordlab.config import DEFAULT_SEED, MAX_STEPS
from chordlab.constants import OUTPUT_FORMATS, SUBCOMMANDS


class RunConfig(BaseModel):
    """Validated parameters of one CLI invocation"""

    model_config = ConfigDict(str_strip_whitespace=True, validate_assignment=True)

    subcommand: str = Field(..., description="Top-level command")
    target: Optional[str] = Field(None, description="Table, formula or series selected")
    n: Optional[int] = Field(None, ge=1)
    k: Optional[int] = Field(None, ge=0)
    q: Optional[int] = Field(None, ge=0)
    b: Optional[int] = Field(None, ge=0)
    k_min: Optional[int] = Field(None, ge=2)
    k_max: Optional[int] = Field(None, ge=2)
    n_min: Optional[int] = Field(None, ge=1)
    n_max: Optional[int] = Field(None, ge=1)
    samples: Optional[int] = Field(None, ge=1)
    trials: Optional[int] = Field(None, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2**64, description="Fixed by default, never time based")
    max_steps: int = Field(MAX_STEPS, ge=1)
    threads: Optional[int] = Field(None, ge=0)
    scalable: bool = False
    exact: bool = False
    timeout_budget: int = Field(0, ge=0, description="Timeouts tolerated before exit code 4")
    enqueue: bool = Field(False, description="Submit figure jobs to the RQ queue")
    only: List[str] = Field(default_factory=list, description="Self-test checks to run (empty = all)")
    output_format: str = Field("csv")
    output_path: Optional[str] = None

    @field_validator("subcommand")
    @classmethod
    def validate_subcommand(cls, value: str) -> str:
        if value not in SUBCOMMANDS:
            raise ValueError(f"subcommand must be one of: {', '.join(SUBCOMMANDS)}")
        return value

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, value: str) -> str:
        value = value.lower()
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of: {', '.join(OUTPUT_FORMATS)}")
        return value

    @model_validator(mode="after")
    def check_ranges(self) -> "RunConfig":
        if self.k_min is not None and self.k_max is not None and self.k_max < self.k_min:
            raise ValueError("k range is empty: k_max < k_min")
        if self.n is not None and self.k is not None and self.k > self.n:
            raise ValueError("k cannot exceed n")
        if self.n_min is not None and self.n_max is not None and self.n_max < self.n_min:
            raise ValueError("n range is empty: n_max < n_min")
        return self

    def for_output(self) -> dict:
        """Config as recorded in output metadata; the worker count never changes results."""
        return self.model_dump(exclude={"threads", "enqueue"}, exclude_none=True)


class SelfTestResult(BaseModel):
    """One oracle comparison run by `selftest`"""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    passed: bool
    detail: str = ""
    duration_ms: float = Field(0.0, ge=0)
