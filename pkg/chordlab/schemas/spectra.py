"""
Pydantic schema for exact spectral certificates.
"""

from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer


class SpectrumReport(BaseModel):
    """Claimed spectrum of one matrix and the exact checks that certify it"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix_name: str = Field(..., min_length=1)
    k: int = Field(..., ge=2)
    claimed: Dict[int, int] = Field(..., description="eigenvalue -> multiplicity")
    verified: bool
    certificate: List[str] = Field(default_factory=list, description="Checks performed, in order")
    value: Optional[Fraction] = Field(None, description="Exact scalar result, when the check produces one")

    @field_serializer("value")
    def serialize_value(self, value: Optional[Fraction]) -> Optional[str]:
        return None if value is None else str(value)
