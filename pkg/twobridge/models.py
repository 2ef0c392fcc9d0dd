from math import gcd
from pydantic import BaseModel, Field, field_validator, model_validator
from typing import List, Dict, Optional


# Braid index of one link, with every formula that was evaluated
class BraidIndexReport(BaseModel):
    value: int
    formulas: Dict[str, int] = Field(default_factory=dict)
    used_mirror: bool = False  # True when computed on b(q, q-p)


# One line of the fixture table
class FixtureRow(BaseModel):
    name: str
    q: int
    p: int
    braid: Optional[int] = None
    homfly: Optional[str] = None  # term-list syntax, e.g. "a^-2 - 1 - z^2 + a^2"

    @model_validator(mode="after")
    def _coprime_pair(self):
        if (self.q, self.p) != (1, 0):
            if not 0 < self.p < self.q:
                raise ValueError(f"{self.name}: need 0 < p < q, got q={self.q}, p={self.p}")
            if gcd(self.p, self.q) != 1:
                raise ValueError(f"{self.name}: q={self.q} and p={self.p} are not coprime")
        return self


class FixtureResult(BaseModel):
    name: str
    q: int
    p: int
    passed: bool
    braid: Optional[int] = None
    homfly: Optional[str] = None
    diffs: List[str] = Field(default_factory=list)


# ==============================
# Verification sweep
# ==============================

class SweepParameters(BaseModel):
    min_q: int = 2
    max_q: int
    checks: List[str] = Field(default_factory=list)
    jobs: int = 1


class LinkRecord(BaseModel):
    q: int
    p: int
    braid: Dict[str, int] = Field(default_factory=dict)
    homfly_digest: Optional[str] = None
    mfw_bound: Optional[int] = None
    checks: Dict[str, bool] = Field(default_factory=dict)
    errors: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class SweepSummary(BaseModel):
    links: int = 0
    passed: int = 0
    failed: int = 0
    failures_by_check: Dict[str, int] = Field(default_factory=dict)

    @classmethod
    def tally(cls, records: List[LinkRecord]) -> "SweepSummary":
        failures: Dict[str, int] = {}
        for record in records:
            for name, ok in record.checks.items():
                if not ok:
                    failures[name] = failures.get(name, 0) + 1
        passed = sum(1 for r in records if r.passed)
        return cls(
            links=len(records),
            passed=passed,
            failed=len(records) - passed,
            failures_by_check=dict(sorted(failures.items())),
        )


class SweepReport(BaseModel):
    parameters: SweepParameters
    records: List[LinkRecord] = Field(default_factory=list)
    summary: SweepSummary = Field(default_factory=SweepSummary)

    @field_validator("records")
    @classmethod
    def _ordered(cls, records: List[LinkRecord]) -> List[LinkRecord]:
        keys = [(r.q, r.p) for r in records]
        if keys != sorted(keys):
            raise ValueError("records must be ordered by (q, p)")
        return records

    @model_validator(mode="after")
    def _summary_matches(self):
        if self.summary != SweepSummary.tally(self.records):
            raise ValueError("summary counts do not match the per-link flags")
        return self

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0
