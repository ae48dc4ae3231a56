"""
Weighted systems of parity equations prod_{i in I_j} x_i = b_j over ±1 variables
"""

from typing import Iterable, List, Tuple

from pydantic import BaseModel, Field

from models.errors import (
    BadArgs, BadRHS, DuplicateLHS, EmptyLHS, MaskOutOfRange, NegativeK, NonpositiveWeight, at_position
)
from models.expansion import MAX_SPARSE_VARS, VarSet, members


class Equation(BaseModel):
    lhs: int = Field(gt=0)
    b: int
    w: int = Field(ge=1)

    class Config:
        frozen = True

    @property
    def variables(self) -> Tuple[int, ...]:
        return members(self.lhs)

    def satisfied_by(self, point: int) -> bool:
        """`point` is a point index (bit set means x_i = -1)"""
        parity = -1 if (self.lhs & point).bit_count() & 1 else 1
        return parity == self.b


class EquationSystem(BaseModel):
    n: int = Field(ge=0)
    equations: List[Equation] = []
    k: int = Field(0, ge=0)

    class Config:
        frozen = True

    @property
    def m(self) -> int:
        return len(self.equations)

    @property
    def total_weight(self) -> int:
        return sum(eq.w for eq in self.equations)


def make_system(n: int, equations: Iterable[Tuple[VarSet, int, int]], k: int) -> EquationSystem:
    """
    Validated system from (lhs mask, b, w) triples.
    """
    if n < 0 or n > MAX_SPARSE_VARS:
        raise BadArgs(f"n must be in 0..{MAX_SPARSE_VARS}, got {n}")
    if k < 0:
        raise NegativeK(f"parameter k must be >= 0, got {k}")

    limit = 1 << n
    seen = set()
    built: List[Equation] = []
    for position, (lhs, b, w) in enumerate(equations, start=1):
        if lhs == 0:
            raise at_position(EmptyLHS(f"equation {position} has an empty left-hand side"), position)
        if lhs < 0 or lhs >= limit:
            raise at_position(MaskOutOfRange(f"equation {position} uses variables beyond n = {n}"), position)
        if lhs in seen:
            raise at_position(DuplicateLHS(f"equation {position} repeats left-hand side {set(members(lhs))}"), position)
        if b not in (1, -1):
            raise at_position(BadRHS(f"equation {position} has right-hand side {b}, expected 1 or -1"), position)
        if w < 1:
            raise at_position(NonpositiveWeight(f"equation {position} has weight {w}, expected >= 1"), position)
        seen.add(lhs)
        built.append(Equation(lhs=lhs, b=b, w=w))

    return EquationSystem(n=n, equations=built, k=k)
