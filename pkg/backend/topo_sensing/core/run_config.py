"""Per-invocation configuration shared by every CLI command."""

import json
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

COMMANDS = ("edge-qfi", "manybody-qfi", "exponent-scan", "estimate", "closed-forms")


class RunConfig(BaseModel):
    command: Literal["edge-qfi", "manybody-qfi", "exponent-scan", "estimate", "closed-forms"]
    model: str = "ssh"
    params: Dict[str, float] = Field(default_factory=dict)
    lambdas: List[float] = Field(min_length=1)
    sizes: List[int] = Field(min_length=1)
    method: Optional[str] = None
    quantity: Optional[str] = None
    samples: Optional[int] = None
    reps: Optional[int] = None
    seed: Optional[int] = None
    interval: Optional[Tuple[float, float]] = None
    output: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    threads: int = 1

    model_config = {"extra": "forbid"}

    @field_validator("sizes")
    @classmethod
    def _positive_sizes(cls, v: List[int]) -> List[int]:
        if any(L < 1 for L in v):
            raise ValueError("sizes must be positive")
        return v

    @field_validator("threads")
    @classmethod
    def _positive_threads(cls, v: int) -> int:
        if v < 1:
            raise ValueError("threads must be >= 1")
        return v

    @model_validator(mode="after")
    def _interval_order(self) -> "RunConfig":
        if self.interval is not None and not self.interval[0] < self.interval[1]:
            raise ValueError("interval must satisfy lo < hi")
        return self

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls.model_validate_json(text)
