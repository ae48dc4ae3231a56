"""
Exact even moments and float p-norms of f(x) under the uniform cube distribution
"""

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Optional

import numpy as np

from models.errors import BadArgs, BadExponent, TooManyVariables
from models.expansion import FourierExpansion
from models.schemas import MomentValue, NormValue
from utils.settings import Settings, get_settings
from utils.walsh import expansion_to_float_table, integer_table

logger = logging.getLogger(__name__)


def xor_convolve(left: Dict[int, int], right: Dict[int, int]) -> Dict[int, int]:
    """Coefficient map of the product of two multilinear polynomials"""
    out: Dict[int, int] = defaultdict(int)
    for mask_a, a in left.items():
        for mask_b, b in right.items():
            out[mask_a ^ mask_b] += a * b
    return {mask: c for mask, c in out.items() if c != 0}


class MomentAgent:
    """
    Computes E[f^2r] exactly by sparse XOR self-convolution, with a dense
    truth-table oracle and a float p-norm fast path.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.dense_cap = self.settings.dense_cap
        self.float_cap = self.settings.float_cap
        self.convolution_cap = self.settings.convolution_cap

    def second_moment(self, f: FourierExpansion) -> Fraction:
        """Parseval: E[f^2] = sum of squared coefficients"""
        return sum((c * c for c in f.terms.values()), Fraction(0))

    def even_moment(self, f: FourierExpansion, r: int) -> MomentValue:
        """
        E[f^2r] = sum_z g_r(z)^2 where g_r is the coefficient map of f^r.
        """
        _check_r(r)
        if f.m == 0:
            return MomentValue(r=r, value=Fraction(0))

        base, denom = f.integer_terms()
        power = base
        for step in range(1, r):
            if len(power) * len(base) > self.convolution_cap and f.n <= self.dense_cap:
                logger.warning(
                    f"XOR convolution would touch {len(power) * len(base)} pairs at step {step}; "
                    f"falling back to the dense oracle"
                )
                return self.even_moment_oracle(f, r)
            power = xor_convolve(power, base)
            if len(power) > self.convolution_cap:
                if f.n <= self.dense_cap:
                    logger.warning(f"convolution map reached {len(power)} entries; using dense oracle")
                    return self.even_moment_oracle(f, r)
                raise TooManyVariables(f.n, self.dense_cap, what="moment fallback")

        total = sum(c * c for c in power.values())
        return MomentValue(r=r, value=Fraction(total, denom ** (2 * r)))

    def even_moment_oracle(self, f: FourierExpansion, r: int) -> MomentValue:
        """Direct expectation 2^-n sum_x f(x)^2r over the full cube"""
        _check_r(r)
        values, denom = integer_table(f, self.dense_cap)
        total = sum(v ** (2 * r) for v in values)
        return MomentValue(r=r, value=Fraction(total, denom ** (2 * r) * (1 << f.n)))

    def p_norm(self, f: FourierExpansion, p: float) -> NormValue:
        """(E|f(x)|^p)^(1/p) in binary64"""
        if not p >= 1:
            raise BadExponent(f"p-norm needs p >= 1, got {p}")
        table = np.abs(expansion_to_float_table(f, self.float_cap))
        peak = float(table.max())
        if peak == 0.0:
            return NormValue(p=p, value=0.0)
        # scale by the peak so |f/peak|^p never overflows
        mean = float(np.mean((table / peak) ** p))
        return NormValue(p=p, value=peak * mean ** (1.0 / p))


def _check_r(r: int) -> None:
    if r < 1:
        raise BadArgs(f"moment order r must be >= 1, got {r}")
