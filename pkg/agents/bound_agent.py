"""
Exact verifiers for the width-based hypercontractive inequalities
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Optional, Union

from agents.moment_agent import MomentAgent
from models.errors import BadExponents
from models.expansion import FourierExpansion
from models.schemas import BoundName, BoundReport
from utils.coefficients import (
    coeff_classical, coeff_prior_42, coeff_width_2r, coeff_width_2r_refined, coeff_width_42, coeff_width_qp
)
from utils.settings import Settings, get_settings
from utils.walsh import degree, width

logger = logging.getLogger(__name__)

Number = Union[Fraction, float]


class BoundAgent:
    """
    Compares 2r-th powers of norms in exact rationals; only the corollary
    check works in floating point.
    """

    def __init__(self, settings: Optional[Settings] = None, moment_agent: Optional[MomentAgent] = None):
        self.settings = settings or get_settings()
        self.moments = moment_agent or MomentAgent(self.settings)
        self.float_tolerance = 1e-9

    def check_classical_42(self, f: FourierExpansion) -> BoundReport:
        """E[f^4] <= 9^d E[f^2]^2"""
        d = degree(f).degree
        second = self.moments.second_moment(f)
        lhs = self.moments.even_moment(f, 2).value
        rhs = 9 ** d * second * second
        return self._exact_report(BoundName.CLASSICAL, lhs, rhs, {"d": d})

    def check_theorem_42(self, f: FourierExpansion) -> BoundReport:
        """E[f^4] <= (2 rho + 1 - 2 rho / m) E[f^2]^2"""
        rho = width(f).width
        fourth, _ = coeff_width_42(rho, f.m)
        second = self.moments.second_moment(f)
        lhs = self.moments.even_moment(f, 2).value
        rhs = fourth * second * second
        return self._exact_report(BoundName.WIDTH42, lhs, rhs, {"rho": rho, "m": f.m, "coefficient": float(fourth)})

    def check_prior_42(self, f: FourierExpansion) -> BoundReport:
        """E[f^4] <= 2 rho^2 E[f^2]^2, the weaker width bound for rho >= 2"""
        rho = width(f).width
        fourth, _ = coeff_prior_42(rho)
        second = self.moments.second_moment(f)
        lhs = self.moments.even_moment(f, 2).value
        return self._exact_report(BoundName.PRIOR42, lhs, fourth * second * second, {"rho": rho})

    def check_theorem_2r(self, f: FourierExpansion, r: int) -> BoundReport:
        """E[f^2r] <= (2r)! rho^(r-1) E[f^2]^r"""
        rho = width(f).width
        # rho = 0 means f is constant, so every norm coincides
        coefficient = coeff_width_2r(r, rho)[0] if rho >= 1 else 1
        return self._moment_ratio_report(BoundName.WIDTH2R, f, r, coefficient, rho)

    def check_theorem_2r_refined(self, f: FourierExpansion, r: int) -> BoundReport:
        """E[f^2r] <= B_r (2r)!/r! rho^(r-1) E[f^2]^r"""
        rho = width(f).width
        coefficient = coeff_width_2r_refined(r, rho) if rho >= 1 else 1
        return self._moment_ratio_report(BoundName.REFINED2R, f, r, coefficient, rho)

    def check_corollary(self, f: FourierExpansion, q: float, p: float) -> BoundReport:
        """||f||_q <= ((2r)! rho^(r-1))^(1/2r) ||f||_p with r = ceil(q/2), in floats"""
        if not q > p >= 2:
            raise BadExponents(f"need q > p >= 2, got q = {q}, p = {p}")
        rho = width(f).width
        coefficient, r = coeff_width_qp(q, p, rho) if rho >= 1 else (1.0, math.ceil(q / 2))
        lhs = self.moments.p_norm(f, q).value
        rhs = coefficient * self.moments.p_norm(f, p).value
        slack = rhs - lhs
        scale = max(abs(rhs), abs(lhs), 1e-300)
        holds = lhs <= rhs or -slack <= self.float_tolerance * scale
        tight = abs(slack) <= self.float_tolerance * scale
        return BoundReport(
            name=BoundName.COROLLARY, exact=False, lhs=lhs, rhs=rhs, slack=slack,
            holds=holds, tight=tight,
            parameters={"q": q, "p": p, "r": r, "rho": rho, "coefficient": coefficient},
        )

    def _moment_ratio_report(self, name: BoundName, f: FourierExpansion, r: int,
                             coefficient: int, rho: int) -> BoundReport:
        second = self.moments.second_moment(f)
        lhs = self.moments.even_moment(f, r).value
        rhs = coefficient * second ** r
        return self._exact_report(name, lhs, rhs, {"r": r, "rho": rho, "coefficient": float(coefficient)})

    def _exact_report(self, name: BoundName, lhs: Fraction, rhs: Fraction,
                      parameters: Dict[str, float]) -> BoundReport:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        report = BoundReport(
            name=name, exact=True, lhs=lhs, rhs=rhs, slack=rhs - lhs,
            holds=lhs <= rhs, tight=lhs == rhs, parameters=parameters,
        )
        if not report.holds:
            logger.error(f"❌ {name.value} violated: lhs {lhs} > rhs {rhs} ({parameters})")
        return report
