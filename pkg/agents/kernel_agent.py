"""
MaxLin above-average: excess polynomial, width-based lower-bound test,
kernel construction and a brute-force decision oracle.
"""

import logging
import math
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.equations import Equation, EquationSystem, make_system
from models.errors import EmptySystem, TooManyVariables
from models.expansion import MAX_SPARSE_VARS, FourierExpansion, make_expansion, members, point_at, point_index
from models.schemas import (
    KernelResult, KernelVerdict, LowerBoundTest, SolveResult, WidthProfile, WitnessCheck
)
from utils.settings import Settings, get_settings
from utils.walsh import fwht_numpy, integer_table, width

logger = logging.getLogger(__name__)

INT64_HEADROOM = 1 << 62


class KernelAgent:
    """
    Q = sum_j w_j b_j prod_{i in I_j} x_i; an assignment satisfies weight
    (W + Q(x)) / 2, so the instance is a Yes-instance iff max Q >= 2k.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.bruteforce_cap = self.settings.bruteforce_cap

    def excess_polynomial(self, system: EquationSystem) -> FourierExpansion:
        return make_expansion(system.n, [(eq.lhs, eq.w * eq.b) for eq in system.equations])

    def system_width(self, system: EquationSystem) -> WidthProfile:
        return width(self.excess_polynomial(system))

    def satisfied_weight(self, system: EquationSystem, x: Sequence[int]) -> int:
        point = point_index(x)
        return sum(eq.w for eq in system.equations if eq.satisfied_by(point))

    def sum_squares(self, system: EquationSystem) -> int:
        """E[Q^2] = sum_j c_j^2"""
        return sum(eq.w * eq.w for eq in system.equations)

    def m_bound(self, system: EquationSystem) -> int:
        rho = self.system_width(system).width
        return 16 * system.k * system.k * (2 * rho + 1)

    def lower_bound_test(self, system: EquationSystem) -> LowerBoundTest:
        """
        Passes iff sum c_j^2 >= 16 k^2 (2 rho + 1), i.e. the guaranteed value
        1/2 sqrt(sum c_j^2 / (2 rho + 1)) of Q reaches 2k.
        """
        if system.m == 0:
            raise EmptySystem("lower-bound test needs at least one equation")
        rho = self.system_width(system).width
        total = self.sum_squares(system)
        bound = 16 * system.k * system.k * (2 * rho + 1)
        return LowerBoundTest(
            passes=total >= bound,
            threshold=0.5 * math.sqrt(total / (2 * rho + 1)),
            sum_squares=total,
            m_bound=bound,
        )

    def kernelize(self, system: EquationSystem) -> KernelResult:
        if system.m == 0:
            # Q = 0, so only k = 0 is a Yes-instance; the input is already tiny
            passes, threshold, total, bound = system.k == 0, 0.0, 0, 16 * system.k * system.k
        else:
            test = self.lower_bound_test(system)
            passes, threshold, total, bound = test.passes, test.threshold, test.sum_squares, test.m_bound
        rho = self.system_width(system).width

        if passes:
            kernel = consistent_kernel(system.k)
            verdict = KernelVerdict.YES_BY_BOUND
        else:
            kernel = system
            verdict = KernelVerdict.PASS_THROUGH

        logger.debug(f"kernel verdict {verdict.value}: m = {system.m}, rho = {rho}, k = {system.k}")
        return KernelResult(
            verdict=verdict,
            kernel=kernel,
            k_prime=system.k,
            threshold=threshold,
            exact_test=passes,
            m=system.m,
            width=rho,
            sum_squares=total,
            m_bound=bound,
            count_test=system.m >= bound,
            width_exponent=self.width_exponent(system),
        )

    def width_exponent(self, system: EquationSystem) -> Optional[float]:
        """Smallest alpha with rho <= m^alpha; None when m <= 1 or rho = 0"""
        rho = self.system_width(system).width
        if system.m <= 1 or rho == 0:
            return None
        return math.log(rho) / math.log(system.m)

    def solve_bruteforce(self, system: EquationSystem) -> SolveResult:
        """
        Exact maximum of the satisfied weight over all 2^n assignments.

        Q splits into a sum over connected components of the variables (two
        variables are connected when some equation contains both), so each
        component is enumerated on its own and the cap applies per component.
        Ties go to the smallest assignment index; unused variables stay +1.
        """
        max_q = 0
        point = 0
        for positions, equations in _components(system):
            if len(positions) > self.bruteforce_cap:
                raise TooManyVariables(len(positions), self.bruteforce_cap, what="brute-force component")
            best, value = self._maximize_component(positions, equations)
            max_q += value
            for j, position in enumerate(positions):
                if best >> j & 1:
                    point |= 1 << position

        total_weight = system.total_weight
        return SolveResult(
            max_weight=(total_weight + max_q) // 2,
            witness=list(point_at(point, system.n)),
            max_q=max_q,
            total_weight=total_weight,
        )

    def _maximize_component(self, positions: List[int], equations: List[Equation]) -> Tuple[int, int]:
        """(local point index, max Q) over the 2^len(positions) local assignments"""
        local = {position: j for j, position in enumerate(positions)}
        terms = [(_remap(eq.lhs, local), eq.w * eq.b) for eq in equations]

        if sum(eq.w for eq in equations) < INT64_HEADROOM:
            table = np.zeros(1 << len(positions), dtype=np.int64)
            for mask, c in terms:
                table[mask] = c
            values = fwht_numpy(table)
            best = int(np.argmax(values))
            return best, int(values[best])

        values, _ = integer_table(make_expansion(len(positions), terms), dense_cap=self.bruteforce_cap)
        max_q = max(values)
        return values.index(max_q), max_q

    def decide(self, system: EquationSystem) -> bool:
        """max Q >= 2k, equivalently max satisfied weight >= W/2 + k"""
        return self.solve_bruteforce(system).max_q >= 2 * system.k

    def alon_witness_check(self, system: EquationSystem) -> WitnessCheck:
        """
        max Q >= 1/2 sqrt(E[Q^2] / (2 rho + 1)), compared as
        (2 max Q)^2 (2 rho + 1) >= E[Q^2] since max Q >= E[Q] = 0.
        """
        solved = self.solve_bruteforce(system)
        rho = self.system_width(system).width
        total = self.sum_squares(system)
        holds = solved.max_q >= 0 and (2 * solved.max_q) ** 2 * (2 * rho + 1) >= total
        return WitnessCheck(
            holds=holds,
            max_q=solved.max_q,
            threshold=0.5 * math.sqrt(total / (2 * rho + 1)),
        )


def _components(system: EquationSystem) -> List[Tuple[List[int], List[Equation]]]:
    """Connected components as (sorted 0-based variable positions, their equations)"""
    parent = list(range(system.n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for eq in system.equations:
        first, *rest = (i - 1 for i in eq.variables)
        for i in rest:
            parent[find(i)] = find(first)

    groups: Dict[int, List[Equation]] = defaultdict(list)
    for eq in system.equations:
        groups[find(eq.variables[0] - 1)].append(eq)

    components = []
    for root in sorted(groups):
        equations = groups[root]
        mask = 0
        for eq in equations:
            mask |= eq.lhs
        components.append(([i - 1 for i in members(mask)], equations))
    return components


def _remap(mask: int, local: Dict[int, int]) -> int:
    out = 0
    for i in members(mask):
        out |= 1 << local[i - 1]
    return out


def consistent_kernel(k: int) -> EquationSystem:
    """
    2k unit-weight equations with b = +1, all satisfied by x = (1, ..., 1).
    Uses x_i = 1 for i = 1..2k while 2k variables fit in a VarSet; past that,
    the distinct masks 1..2k over (2k).bit_length() variables.
    """
    count = 2 * k
    if count <= MAX_SPARSE_VARS:
        return make_system(count, [(1 << i, 1, 1) for i in range(count)], k)
    return make_system(count.bit_length(), [(mask, 1, 1) for mask in range(1, count + 1)], k)
