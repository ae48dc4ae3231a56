"""
Seeded randomized suites that gate on the width-based inequalities and the
MaxLin kernel guarantees.
"""

import asyncio
import logging
import random
from typing import Any, Callable, List, Optional, Sequence, Tuple

from agents.bound_agent import BoundAgent
from agents.family_agent import FamilyAgent
from agents.kernel_agent import KernelAgent
from agents.moment_agent import MomentAgent
from models.equations import EquationSystem, make_system
from models.errors import BadArgs, BadExponents
from models.expansion import MAX_SPARSE_VARS, FourierExpansion
from models.schemas import KernelVerdict, SuiteReport
from utils.coefficients import coeff_width_42
from utils.settings import Settings, get_settings
from utils.walsh import degree, width

logger = logging.getLogger(__name__)

COROLLARY_PAIRS = ((4.0, 2.0), (3.0, 2.0), (6.0, 2.0), (6.0, 4.0))
THEOREM2_ORDERS = (1, 2, 3)


class VerificationAgent:
    """
    Instances come from one seeded generator consumed in order; the checks on
    them are independent and run concurrently.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.moments = MomentAgent(self.settings)
        self.bounds = BoundAgent(self.settings, self.moments)
        self.families = FamilyAgent(self.settings, self.moments)
        self.kernels = KernelAgent(self.settings)
        self.max_failures_reported = 10
        self.monotonicity_tolerance = 1e-12

    def random_functions(self, trials: int, n_max: int, m_max: int, seed: int,
                         coefficient_range: int = 10) -> List[FourierExpansion]:
        _check_suite(trials, n_max, m_max)
        rng = random.Random(seed)
        functions = []
        for _ in range(trials):
            n = rng.randint(1, n_max)
            m = rng.randint(1, min(m_max, 1 << n))
            functions.append(self.families.random_function(n, m, coefficient_range, rng=rng))
        return functions

    def random_systems(self, trials: int, n_max: int, m_max: int, seed: int,
                       w_max: int = 3, k_max: int = 3) -> List[EquationSystem]:
        _check_suite(trials, n_max, m_max)
        rng = random.Random(seed)
        systems = []
        for _ in range(trials):
            n = rng.randint(1, n_max)
            m = rng.randint(1, min(m_max, (1 << n) - 1))
            masks = rng.sample(range(1, 1 << n), m)
            equations = [(mask, rng.choice((-1, 1)), rng.randint(1, w_max)) for mask in masks]
            systems.append(make_system(n, equations, rng.randint(0, k_max)))
        return systems

    async def theorem1_suite(self, trials: int, n_max: int, m_max: int, seed: int) -> SuiteReport:
        functions = self.random_functions(trials, n_max, m_max, seed)
        results = await self._run_checks(functions, self._theorem1_case)
        return self._summarize("theorem1", seed, functions, results)

    async def theorem2_suite(self, trials: int, n_max: int, m_max: int, seed: int,
                             r: Optional[int] = None) -> SuiteReport:
        if r is not None and r < 1:
            raise BadArgs(f"moment order r must be >= 1, got {r}")
        orders = (r,) if r is not None else THEOREM2_ORDERS
        functions = self.random_functions(trials, n_max, m_max, seed)
        results = await self._run_checks(functions, lambda f: self._theorem2_case(f, orders))
        return self._summarize("theorem2", seed, functions, results)

    async def corollary_suite(self, trials: int, n_max: int, m_max: int, seed: int,
                              q: Optional[float] = None, p: Optional[float] = None) -> SuiteReport:
        if (q is None) != (p is None):
            raise BadArgs("give both q and p, or neither")
        if q is not None and not q > p >= 2:
            raise BadExponents(f"need q > p >= 2, got q = {q}, p = {p}")
        if n_max > self.settings.float_cap:
            raise BadArgs(f"corollary norms need nmax <= {self.settings.float_cap}, got {n_max}")
        pairs: Sequence[Tuple[float, float]] = COROLLARY_PAIRS if q is None else ((q, p),)
        functions = self.random_functions(trials, n_max, m_max, seed)
        results = await self._run_checks(functions, lambda f: self._corollary_case(f, pairs))
        return self._summarize("corollary", seed, functions, results)

    async def maxlin_suite(self, trials: int, n_max: int, m_max: int, seed: int,
                           w_max: int = 3, k_max: int = 3) -> SuiteReport:
        if n_max > self.settings.bruteforce_cap:
            raise BadArgs(f"brute force needs nmax <= {self.settings.bruteforce_cap}, got {n_max}")
        systems = self.random_systems(trials, n_max, m_max, seed, w_max, k_max)
        results = await self._run_checks(systems, self._maxlin_case)
        return self._summarize("maxlin", seed, systems, results)

    async def _run_checks(self, items: Sequence[Any], check: Callable[[Any], dict]) -> List[Any]:
        tasks = [asyncio.to_thread(check, item) for item in items]
        return await asyncio.gather(*tasks, return_exceptions=True)

    def _theorem1_case(self, f: FourierExpansion) -> dict:
        width_report = self.bounds.check_theorem_42(f)
        classical = self.bounds.check_classical_42(f)
        counts = {"tight": int(width_report.tight)}
        failures = []
        if not width_report.holds:
            failures.append(f"width42 lhs {width_report.lhs} > rhs {width_report.rhs}")
        if not classical.holds:
            failures.append(f"classical lhs {classical.lhs} > rhs {classical.rhs}")

        # where 2 rho + 1 - 2 rho / m < 9^d the width bound must be strictly smaller
        fourth, _ = coeff_width_42(width(f).width, f.m)
        if fourth < 9 ** degree(f).degree:
            counts["comparator_applicable"] = 1
            if not width_report.rhs < classical.rhs:
                failures.append(f"comparator: width rhs {width_report.rhs} >= classical rhs {classical.rhs}")

        # for rho >= 2 the width bound must also beat 2 rho^2
        if width(f).width >= 2:
            prior = self.bounds.check_prior_42(f)
            counts["prior_applicable"] = 1
            if not prior.holds or not width_report.rhs < prior.rhs:
                failures.append(f"prior42: width rhs {width_report.rhs} vs 2 rho^2 rhs {prior.rhs}")
        return {"failures": failures, "counts": counts}

    def _theorem2_case(self, f: FourierExpansion, orders: Sequence[int]) -> dict:
        failures = []
        counts = {"refined_tight": 0}
        for r in orders:
            stated = self.bounds.check_theorem_2r(f, r)
            refined = self.bounds.check_theorem_2r_refined(f, r)
            if not stated.holds:
                failures.append(f"width2r r={r}: lhs {stated.lhs} > rhs {stated.rhs}")
            if not refined.holds:
                failures.append(f"refined2r r={r}: lhs {refined.lhs} > rhs {refined.rhs}")
            counts[f"r{r}"] = 1
            counts["refined_tight"] += int(refined.tight)
        return {"failures": failures, "counts": counts}

    def _corollary_case(self, f: FourierExpansion, pairs: Sequence[Tuple[float, float]]) -> dict:
        failures = []
        for q, p in pairs:
            report = self.bounds.check_corollary(f, q, p)
            if not report.holds:
                failures.append(f"corollary q={q} p={p}: {report.lhs} > {report.rhs}")
            norm_q = self.moments.p_norm(f, q).value
            norm_p = self.moments.p_norm(f, p).value
            if norm_q < norm_p - self.monotonicity_tolerance * max(1.0, norm_p):
                failures.append(f"monotonicity q={q} p={p}: {norm_q} < {norm_p}")
        return {"failures": failures, "counts": {"pairs": len(pairs)}}

    def _maxlin_case(self, system: EquationSystem) -> dict:
        result = self.kernels.kernelize(system)
        failures = []
        if result.verdict == KernelVerdict.YES_BY_BOUND:
            if not self.kernels.decide(system):
                failures.append(f"YES_BY_BOUND not confirmed by brute force (m={system.m}, k={system.k})")
        elif not system.m < result.m_bound:
            failures.append(f"PASS_THROUGH with m={system.m} >= {result.m_bound}")
        witness = self.kernels.alon_witness_check(system)
        if not witness.holds:
            failures.append(f"witness check: max Q {witness.max_q} < {witness.threshold}")
        return {"failures": failures, "counts": {result.verdict.value: 1}}

    def _summarize(self, suite: str, seed: int, items: Sequence[Any], results: List[Any]) -> SuiteReport:
        report = SuiteReport(suite=suite, seed=seed, trials=len(items))
        for index, result in enumerate(results):
            if isinstance(result, Exception):
                logger.error(f"❌ {suite} trial {index} raised: {result}")
                report.errors += 1
                self._note(report, f"trial {index}: error {type(result).__name__}: {result}")
                continue
            for key, value in result["counts"].items():
                report.counts[key] = report.counts.get(key, 0) + value
            if result["failures"]:
                report.violations += 1
                for failure in result["failures"]:
                    self._note(report, f"trial {index}: {failure}")

        if report.passed:
            logger.info(f"✅ {suite}: {report.trials} trials, zero violations")
        else:
            logger.error(f"💥 {suite}: {report.violations} violations, {report.errors} errors")
        return report

    def _note(self, report: SuiteReport, message: str) -> None:
        if len(report.failures) < self.max_failures_reported:
            report.failures.append(message)


def _check_suite(trials: int, n_max: int, m_max: int) -> None:
    if trials < 0 or n_max < 1 or m_max < 1:
        raise BadArgs(f"need trials >= 0, nmax >= 1, mmax >= 1; got {trials}, {n_max}, {m_max}")
    if n_max > MAX_SPARSE_VARS:
        raise BadArgs(f"nmax must be <= {MAX_SPARSE_VARS}, got {n_max}")
