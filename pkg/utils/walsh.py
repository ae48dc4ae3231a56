"""
Walsh-Hadamard transform between Fourier expansions and truth tables,
plus degree and width statistics.

The transform is the unnormalized +-1 Hadamard matrix in point-index order:
out[s] = sum_b (-1)^{|s & b|} v[b]. Placing the coefficient of mask I at
index I and transforming yields the truth table; transforming a truth table
and dividing by 2^n yields the coefficients.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models.errors import BadLength, TooManyVariables
from models.expansion import FourierExpansion, TruthTable, make_expansion
from models.schemas import DegreeValue, WidthProfile
from utils.settings import get_settings

logger = logging.getLogger(__name__)


def _log2_length(length: int) -> int:
    if length < 1 or length & (length - 1):
        raise BadLength(f"transform length must be a power of two, got {length}")
    return length.bit_length() - 1


def _butterfly(values: List[int]) -> List[int]:
    """In-place iterative transform over Python ints"""
    size = len(values)
    h = 1
    while h < size:
        for start in range(0, size, h << 1):
            for j in range(start, start + h):
                x, y = values[j], values[j + h]
                values[j] = x + y
                values[j + h] = x - y
        h <<= 1
    return values


def fwht_numpy(values: np.ndarray) -> np.ndarray:
    """Vectorized transform of a length-2^n array (float64 or int64)"""
    size = values.shape[0]
    _log2_length(size)
    out = values.copy()
    h = 1
    while h < size:
        blocks = out.reshape(-1, 2, h)
        left = blocks[:, 0, :].copy()
        right = blocks[:, 1, :]
        blocks[:, 0, :] = left + right
        blocks[:, 1, :] = left - right
        h <<= 1
    return out


def wht(values: Sequence[Fraction]) -> List[Fraction]:
    """Unnormalized transform; applying it twice scales by 2^n"""
    _log2_length(len(values))
    fractions = [Fraction(v) for v in values]
    denom = 1
    for v in fractions:
        denom = math.lcm(denom, v.denominator)
    scaled = [v.numerator * (denom // v.denominator) for v in fractions]
    return [Fraction(v, denom) for v in _butterfly(scaled)]


def _check_dense(n: int, cap: Optional[int], default: int) -> None:
    limit = default if cap is None else cap
    if n > limit:
        raise TooManyVariables(n, limit)


def integer_table(f: FourierExpansion, dense_cap: Optional[int] = None) -> Tuple[List[int], int]:
    """
    Truth table of D*f as Python ints, with D the common denominator of f.
    """
    _check_dense(f.n, dense_cap, get_settings().dense_cap)
    scaled, denom = f.integer_terms()
    values = [0] * (1 << f.n)
    for mask, c in scaled.items():
        values[mask] = c
    return _butterfly(values), denom


def expansion_to_table(f: FourierExpansion, dense_cap: Optional[int] = None) -> TruthTable:
    values, denom = integer_table(f, dense_cap)
    return TruthTable(n=f.n, values=[Fraction(v, denom) for v in values])


def expansion_to_float_table(f: FourierExpansion, float_cap: Optional[int] = None) -> np.ndarray:
    """Fast path: float64 truth table for norms that need no exactness"""
    _check_dense(f.n, float_cap, get_settings().float_cap)
    values = np.zeros(1 << f.n, dtype=np.float64)
    for mask, c in f.terms.items():
        values[mask] = float(c)
    return fwht_numpy(values)


def table_to_expansion(table: TruthTable) -> FourierExpansion:
    size = 1 << table.n
    coefficients = wht(table.values)
    return make_expansion(
        table.n,
        ((mask, c / size) for mask, c in enumerate(coefficients) if c != 0),
    )


def degree(f: FourierExpansion) -> DegreeValue:
    return DegreeValue(degree=max((mask.bit_count() for mask in f.terms), default=0))


def width(f: FourierExpansion) -> WidthProfile:
    """rho_i = number of terms containing variable i; rho = max_i rho_i"""
    per_variable = [0] * f.n
    for mask in f.terms:
        i = 0
        while mask:
            if mask & 1:
                per_variable[i] += 1
            mask >>= 1
            i += 1
    return WidthProfile(per_variable=per_variable, width=max(per_variable, default=0))
