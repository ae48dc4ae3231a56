"""
Exact representations of pseudo-Boolean functions f: {-1,1}^n -> Q

A VarSet is the bitmask of a subset I of [n]: bit i-1 is set when variable i
belongs to I, and the empty mask is the constant character.

Point-index convention shared by every dense table in the package: the point
with index b has x_i = +1 when bit i-1 of b is 0 and x_i = -1 when it is 1.
"""

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from models.errors import (
    BadArgs, BadDomainValue, BadLength, DuplicateTerm, MaskOutOfRange, ZeroCoefficient, at_position
)

VarSet = int
Coefficient = Union[int, Fraction]

MAX_SPARSE_VARS = 63


def mask_of(indices: Iterable[int]) -> VarSet:
    """Bitmask of a collection of distinct 1-based variable indices"""
    mask = 0
    for i in indices:
        if i < 1:
            raise BadArgs(f"variable index must be >= 1, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise BadArgs(f"variable {i} repeated")
        mask |= bit
    return mask


def members(mask: VarSet) -> Tuple[int, ...]:
    """1-based variable indices contained in a mask, ascending"""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def point_index(x: Sequence[int]) -> int:
    index = 0
    for i, xi in enumerate(x):
        if xi == -1:
            index |= 1 << i
        elif xi != 1:
            raise BadDomainValue(f"x_{i + 1} = {xi} is not in {{-1, +1}}")
    return index


def point_at(index: int, n: int) -> Tuple[int, ...]:
    return tuple(-1 if (index >> i) & 1 else 1 for i in range(n))


class FourierExpansion(BaseModel):
    """Sparse multilinear polynomial: mask -> nonzero exact coefficient"""
    n: int = Field(ge=0)
    terms: Dict[int, Fraction] = {}

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def m(self) -> int:
        return len(self.terms)

    def coefficient(self, mask: VarSet) -> Fraction:
        return self.terms.get(mask, Fraction(0))

    def sorted_terms(self) -> List[Tuple[VarSet, Fraction]]:
        """Terms ordered by degree, then by mask"""
        return sorted(self.terms.items(), key=lambda t: (t[0].bit_count(), t[0]))

    def integer_terms(self) -> Tuple[Dict[int, int], int]:
        """
        Clear denominators: returns (mask -> integer coefficient, D) with
        f = (1/D) * sum of the integer terms.
        """
        denom = 1
        for c in self.terms.values():
            denom = math.lcm(denom, c.denominator)
        scaled = {mask: c.numerator * (denom // c.denominator) for mask, c in self.terms.items()}
        return scaled, denom


class TruthTable(BaseModel):
    """Dense vector of the 2^n values of f in point-index order"""
    n: int = Field(ge=0)
    values: List[Fraction]

    class Config:
        frozen = True
        arbitrary_types_allowed = True


def _as_fraction(value: Coefficient) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Rational)):
        raise BadArgs(f"coefficients must be exact rationals, got {type(value).__name__}")
    return Fraction(value)


def make_expansion(n: int, terms: Iterable[Tuple[VarSet, Coefficient]]) -> FourierExpansion:
    """Validated FourierExpansion from (mask, coefficient) pairs"""
    if n < 0 or n > MAX_SPARSE_VARS:
        raise BadArgs(f"n must be in 0..{MAX_SPARSE_VARS}, got {n}")

    limit = 1 << n
    coefficients: Dict[int, Fraction] = {}
    for position, (mask, value) in enumerate(terms, start=1):
        if mask < 0 or mask >= limit:
            raise at_position(MaskOutOfRange(f"term {position} uses variables beyond n = {n}"), position)
        if mask in coefficients:
            raise at_position(DuplicateTerm(f"term {_describe(mask)} given twice"), position)
        try:
            coefficient = _as_fraction(value)
        except BadArgs as err:
            raise at_position(err, position)
        if coefficient == 0:
            raise at_position(ZeroCoefficient(f"term {_describe(mask)} has coefficient 0"), position)
        coefficients[mask] = coefficient

    return FourierExpansion(n=n, terms=coefficients)


def make_table(n: int, values: Sequence[Coefficient]) -> TruthTable:
    if n < 0:
        raise BadArgs(f"n must be >= 0, got {n}")
    if len(values) != 1 << n:
        raise BadLength(f"truth table for n = {n} needs {1 << n} values, got {len(values)}")
    return TruthTable(n=n, values=[_as_fraction(v) for v in values])


def evaluate(f: FourierExpansion, x: Sequence[int]) -> Fraction:
    """f(x) = sum of coefficient * prod_{i in I} x_i, exactly"""
    if len(x) != f.n:
        raise BadDomainValue(f"point has {len(x)} coordinates, expected {f.n}")
    point = point_index(x)
    total = Fraction(0)
    for mask, c in f.terms.items():
        if (mask & point).bit_count() & 1:
            total -= c
        else:
            total += c
    return total


def _describe(mask: VarSet) -> str:
    return "{" + ", ".join(str(i) for i in members(mask)) + "}"
