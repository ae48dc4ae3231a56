"""
Pydantic result models for pseudo-Boolean function analysis
"""

from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, validator

from models.equations import EquationSystem


def _rational(value):
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return value


class ExactModel(BaseModel):
    """Base model: Fractions travel as "p/q" strings"""

    class Config:
        arbitrary_types_allowed = True
        json_encoders = {Fraction: str}


class BoundName(str, Enum):
    CLASSICAL = "classical"
    WIDTH42 = "width42"
    WIDTH2R = "width2r"
    COROLLARY = "corollary"
    REFINED2R = "refined2r"
    PRIOR42 = "prior42"


class KernelVerdict(str, Enum):
    YES_BY_BOUND = "YES_BY_BOUND"
    PASS_THROUGH = "PASS_THROUGH"


class WidthProfile(BaseModel):
    per_variable: List[int] = []
    width: int = Field(0, ge=0)


class DegreeValue(BaseModel):
    degree: int = Field(ge=0)


class MomentValue(ExactModel):
    r: int = Field(ge=1)
    value: Fraction

    _value = validator("value", pre=True, allow_reuse=True)(_rational)


class NormValue(BaseModel):
    p: float = Field(ge=1.0)
    value: float = Field(ge=0.0)


class BoundReport(ExactModel):
    """One inequality check lhs <= rhs; exact reports compare Fractions"""
    name: BoundName
    exact: bool
    lhs: Union[Fraction, float]
    rhs: Union[Fraction, float]
    slack: Union[Fraction, float]
    holds: bool
    tight: bool
    parameters: Dict[str, float] = {}

    @validator("lhs", "rhs", "slack", pre=True)
    def _exact_sides(cls, v, values):
        if isinstance(v, str) or (values.get("exact") and isinstance(v, int)):
            return Fraction(v)
        return v


class CoefficientValue(ExactModel):
    name: BoundName
    exact: Optional[Fraction] = None
    value: float
    r: Optional[int] = None

    _exact = validator("exact", pre=True, allow_reuse=True)(_rational)


class ConjectureScanRow(BaseModel):
    family: str
    n: int
    r: int
    rho: int
    ratio: float
    reference: float
    implied_c: float


class LowerBoundTest(BaseModel):
    passes: bool
    threshold: float
    sum_squares: int
    m_bound: int


class KernelResult(BaseModel):
    verdict: KernelVerdict
    kernel: EquationSystem
    k_prime: int
    threshold: float
    exact_test: bool
    m: int
    width: int
    sum_squares: int
    m_bound: int
    count_test: bool
    width_exponent: Optional[float] = None


class SolveResult(BaseModel):
    max_weight: int
    witness: List[int]
    max_q: int
    total_weight: int


class WitnessCheck(BaseModel):
    holds: bool
    max_q: int
    threshold: float


class SuiteReport(BaseModel):
    suite: str
    seed: int
    trials: int
    violations: int = 0
    errors: int = 0
    counts: Dict[str, int] = {}
    failures: List[str] = []

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.errors == 0


class AnalysisReport(ExactModel):
    """Main report for the analyze command"""
    n: int
    m: int
    degree: int
    width: int
    per_variable: List[int]
    second_moment: Fraction
    moments: List[MomentValue] = []
    norms: List[NormValue] = []
    bounds: List[BoundReport] = []
    tightness: Dict[str, bool] = {}

    _second = validator("second_moment", pre=True, allow_reuse=True)(_rational)
