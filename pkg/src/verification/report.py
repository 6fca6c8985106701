"""
Machine-readable verdicts of the verification suites
"""
import math
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

# Substitute for a non-finite measurement so reports stay valid JSON
NON_FINITE_MEASURE = 1.0e308


class CheckResult(BaseModel):
    """One measured quantity against its bound"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    check_id: str
    measured: float
    bound: float
    relation: Literal['<=', '>='] = '<='
    passed: bool = Field(serialization_alias='pass')

    @field_validator('measured', 'bound')
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("measured and bound must be finite")
        return value

    @classmethod
    def upper(cls, check_id: str, measured: float, bound: float) -> "CheckResult":
        """Passes when measured <= bound"""
        measured = float(measured)
        if not math.isfinite(measured):
            return cls(check_id=check_id, measured=NON_FINITE_MEASURE, bound=bound, passed=False)
        return cls(check_id=check_id, measured=measured, bound=bound, passed=measured <= bound)

    @classmethod
    def lower(cls, check_id: str, measured: float, bound: float) -> "CheckResult":
        """Passes when measured >= bound"""
        measured = float(measured)
        if not math.isfinite(measured):
            return cls(check_id=check_id, measured=-NON_FINITE_MEASURE, bound=bound, relation='>=', passed=False)
        return cls(check_id=check_id, measured=measured, bound=bound, relation='>=', passed=measured >= bound)


class SuiteReport(BaseModel):
    """All checks of one suite and their conjunction"""

    model_config = ConfigDict(frozen=True)

    suite_name: str
    checks: List[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def overall_pass(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True)

    def summary(self) -> str:
        mark = '✓' if self.overall_pass else '✗'
        passed = len(self.checks) - len(self.failed)
        return f"{mark} {self.suite_name}: {passed}/{len(self.checks)} checks passed"
