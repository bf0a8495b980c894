from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class FailureRecord(BaseModel):
    beta: List[int] = Field(..., description="Binary sequence of the threshold graph")
    a: List[int] = Field(..., description="Netflow vector (a_1, ..., a_n)")
    lhs: str = Field(..., description="Left side in canonical polynomial text")
    rhs: str = Field(..., description="Right side in canonical polynomial text")
    check: str = Field("", description="Which comparison failed")


class VerificationReport(BaseModel):
    theorem: str
    instances: int = 0
    passed: int = 0
    failures: List[FailureRecord] = Field(default_factory=list)
    elapsed_ms: int = 0
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two reports of the same kind; instances and failures add up."""
        return VerificationReport(
            theorem=self.theorem if self.theorem == other.theorem else f"{self.theorem}+{other.theorem}",
            instances=self.instances + other.instances,
            passed=self.passed + other.passed,
            failures=self.failures + other.failures,
            elapsed_ms=self.elapsed_ms + other.elapsed_ms,
            seed=self.seed if self.seed is not None else other.seed,
        )

    def public_dict(self) -> dict:
        """The JSON report shape printed by the command line."""
        return self.model_dump(include={"theorem", "instances", "failures", "elapsed_ms", "seed"})


class GraphSummary(BaseModel):
    beta: List[int]
    degrees: List[int]
    bar_d: List[int]


class PolynomialResult(BaseModel):
    graph: Optional[GraphSummary] = None
    a: List[int]
    polynomial: str = Field(..., description="Canonical polynomial text")
    flows: Optional[int] = Field(None, description="Number of integer flows summed")
    symmetric: Optional[bool] = None
    nonnegative: Optional[bool] = None


class HistogramResult(BaseModel):
    graph: GraphSummary
    stat: str
    histogram: Dict[int, int]

    def public_dict(self) -> dict:
        return {"graph": self.graph.model_dump(), f"{self.stat}_histogram": self.histogram}


class PosetSummary(BaseModel):
    n: int
    elements: List[List[int]]
    covers: List[List[int]] = Field(..., description="Index pairs (lower, upper)")
    shapes: List[List[int]]
