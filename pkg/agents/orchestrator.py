"""
Main orchestrator tying the agents to the command-line workflows
"""

import asyncio
import logging
import time
from typing import List, Optional, Sequence, Union

from agents.bound_agent import BoundAgent
from agents.family_agent import FamilyAgent
from agents.kernel_agent import KernelAgent
from agents.moment_agent import MomentAgent
from agents.verification_agent import VerificationAgent
from models.errors import BadArgs
from models.expansion import FourierExpansion
from models.schemas import (
    AnalysisReport, BoundName, CoefficientValue, ConjectureScanRow, KernelResult,
    SolveResult, SuiteReport, WitnessCheck
)
from utils.coefficients import (
    coeff_classical, coeff_prior_42, coeff_width_2r, coeff_width_2r_refined, coeff_width_42, coeff_width_qp,
    integer_root
)
from utils.file_handler import FileHandler, format_function, format_system
from utils.settings import Settings, get_settings
from utils.walsh import degree, width

logger = logging.getLogger(__name__)

DEFAULT_MOMENTS = (1, 2)
DEFAULT_NORMS = (2.0, 4.0)


class AnalysisOrchestrator:
    """
    Orchestrates file loading, analysis, verification suites and MaxLin workflows
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.file_handler = FileHandler()

        self.moment_agent = MomentAgent(self.settings)
        self.bound_agent = BoundAgent(self.settings, self.moment_agent)
        self.family_agent = FamilyAgent(self.settings, self.moment_agent)
        self.kernel_agent = KernelAgent(self.settings)
        self.verification_agent = VerificationAgent(self.settings)

        logger.debug("AnalysisOrchestrator initialized with 5 agents")

    async def analyze_file(self, path: str, moments: Optional[Sequence[int]] = None,
                           norms: Optional[Sequence[float]] = None) -> AnalysisReport:
        logger.info(f"📁 Step 1: Loading {path}...")
        f = await self.file_handler.load_function(path)
        logger.info(f"🔍 Step 2: Analyzing n = {f.n}, m = {f.m}...")
        return await asyncio.to_thread(self.analyze, f, moments, norms)

    def analyze(self, f: FourierExpansion, moments: Optional[Sequence[int]] = None,
                norms: Optional[Sequence[float]] = None) -> AnalysisReport:
        orders = sorted(set(moments or DEFAULT_MOMENTS))
        dense_floats = f.n <= self.settings.float_cap
        if norms is None:
            norms = DEFAULT_NORMS if dense_floats else ()

        profile = width(f)
        bounds = [
            self.bound_agent.check_classical_42(f),
            self.bound_agent.check_theorem_42(f),
        ]
        if profile.width >= 2:
            bounds.append(self.bound_agent.check_prior_42(f))
        for r in orders:
            bounds.append(self.bound_agent.check_theorem_2r(f, r))
            bounds.append(self.bound_agent.check_theorem_2r_refined(f, r))
        if dense_floats:
            bounds.append(self.bound_agent.check_corollary(f, 4.0, 2.0))

        tightness = {}
        for report in bounds:
            key = report.name.value
            if report.name in (BoundName.WIDTH2R, BoundName.REFINED2R):
                key = f"{key}:r={int(report.parameters['r'])}"
            tightness[key] = report.tight

        return AnalysisReport(
            n=f.n,
            m=f.m,
            degree=degree(f).degree,
            width=profile.width,
            per_variable=profile.per_variable,
            second_moment=self.moment_agent.second_moment(f),
            moments=[self.moment_agent.even_moment(f, r) for r in orders],
            norms=[self.moment_agent.p_norm(f, p) for p in norms],
            bounds=bounds,
            tightness=tightness,
        )

    def coefficient(self, kind: str, values: Sequence[float], refined: bool = False) -> CoefficientValue:
        """Coefficient calculators behind the `bound` command"""
        if kind == "classical":
            q, p, d = values
            return CoefficientValue(name=BoundName.CLASSICAL, value=coeff_classical(q, p, _whole(d)))
        if kind == "width42":
            rho, m = (_whole(v) for v in values)
            fourth, root = coeff_width_42(rho, m)
            return CoefficientValue(name=BoundName.WIDTH42, exact=fourth, value=root)
        if kind == "prior42":
            exact, root = coeff_prior_42(_whole(values[0]))
            return CoefficientValue(name=BoundName.PRIOR42, exact=exact, value=root)
        if kind == "width2r":
            r, rho = (_whole(v) for v in values)
            if refined:
                exact = coeff_width_2r_refined(r, rho)
                return CoefficientValue(name=BoundName.REFINED2R, exact=exact,
                                        value=integer_root(exact, 2 * r), r=r)
            exact, root = coeff_width_2r(r, rho)
            return CoefficientValue(name=BoundName.WIDTH2R, exact=exact, value=root, r=r)
        if kind == "qp":
            q, p, rho = values
            root, r = coeff_width_qp(q, p, _whole(rho))
            return CoefficientValue(name=BoundName.COROLLARY, value=root, r=r)
        raise BadArgs(f"unknown coefficient family {kind!r}")

    async def verify(self, suite: str, trials: int, n_max: int, m_max: int, seed: int,
                     r: Optional[int] = None, q: Optional[float] = None,
                     p: Optional[float] = None) -> SuiteReport:
        start_time = time.time()
        logger.info(f"🚀 Running {suite} suite: {trials} trials, seed {seed}")
        agent = self.verification_agent
        if suite == "theorem1":
            report = await agent.theorem1_suite(trials, n_max, m_max, seed)
        elif suite == "theorem2":
            report = await agent.theorem2_suite(trials, n_max, m_max, seed, r=r)
        elif suite == "corollary":
            report = await agent.corollary_suite(trials, n_max, m_max, seed, q=q, p=p)
        elif suite == "maxlin":
            report = await agent.maxlin_suite(trials, n_max, m_max, seed)
        else:
            raise BadArgs(f"unknown suite {suite!r}")
        logger.info(f"🏁 {suite} finished in {(time.time() - start_time) * 1000:.0f}ms")
        return report

    async def maxlin(self, action: str, path: str,
                     out: Optional[str] = None) -> Union[KernelResult, SolveResult, WitnessCheck]:
        system = await self.file_handler.load_system(path)
        logger.info(f"📝 Loaded system: n = {system.n}, m = {system.m}, k = {system.k}")
        if action == "kernel":
            result = self.kernel_agent.kernelize(system)
            if out:
                await self.file_handler.write_text(out, format_system(result.kernel))
            return result
        if action == "solve":
            return await asyncio.to_thread(self.kernel_agent.solve_bruteforce, system)
        if action == "check":
            return await asyncio.to_thread(self.kernel_agent.alon_witness_check, system)
        raise BadArgs(f"unknown maxlin action {action!r}")

    async def example(self, family: str, n: int, out: Optional[str] = None) -> str:
        text = format_function(self.family_agent.build(family, n), comment=f"{family} family, n = {n}")
        if out:
            await self.file_handler.write_text(out, text)
        return text

    def scan(self, family: str, n_max: int, r_max: int) -> List[ConjectureScanRow]:
        return self.family_agent.conjecture_scan(self.family_agent.family_instances(family, n_max), r_max)


def _whole(value: float) -> int:
    if value != int(value):
        raise BadArgs(f"expected an integer, got {value}")
    return int(value)
