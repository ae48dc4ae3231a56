"""
Function families: the extremal examples, a seeded random generator and the
exploratory scan of ||f||_2r / ||f||_2 against sqrt(r * rho).
"""

import logging
import math
import random
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple

from agents.moment_agent import MomentAgent
from models.errors import BadArgs, TooManyVariables
from models.expansion import FourierExpansion, make_expansion
from models.schemas import ConjectureScanRow
from utils.settings import Settings, get_settings
from utils.walsh import width

logger = logging.getLogger(__name__)

FAMILIES = ("affine", "full", "linear", "constant")


class FamilyAgent:
    def __init__(self, settings: Optional[Settings] = None, moment_agent: Optional[MomentAgent] = None):
        self.settings = settings or get_settings()
        self.moments = moment_agent or MomentAgent(self.settings)

    def example_affine(self, n: int) -> FourierExpansion:
        """1 + x_1 + ... + x_n: width 1, m = n + 1"""
        _check_n(n)
        return make_expansion(n, [(0, 1)] + [(1 << i, 1) for i in range(n)])

    def example_full(self, n: int) -> FourierExpansion:
        """Sum of all 2^n characters: width 2^(n-1)"""
        _check_n(n)
        if n > self.settings.dense_cap:
            raise TooManyVariables(n, self.settings.dense_cap, what="full family")
        return make_expansion(n, [(mask, 1) for mask in range(1 << n)])

    def example_linear(self, n: int) -> FourierExpansion:
        """x_1 + ... + x_n"""
        _check_n(n)
        return make_expansion(n, [(1 << i, 1) for i in range(n)])

    def example_constant(self, n: int, value: int = 1) -> FourierExpansion:
        return make_expansion(n, [(0, value)] if value else [])

    def build(self, family: str, n: int) -> FourierExpansion:
        builders = {
            "affine": self.example_affine,
            "full": self.example_full,
            "linear": self.example_linear,
            "constant": self.example_constant,
        }
        if family not in builders:
            raise BadArgs(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
        return builders[family](n)

    def family_instances(self, family: str, n_max: int) -> Iterator[Tuple[str, FourierExpansion]]:
        top = min(n_max, self.settings.dense_cap) if family == "full" else n_max
        for n in range(1, top + 1):
            yield family, self.build(family, n)

    def random_function(self, n: int, m: int, coefficient_range: int = 10,
                        seed: Optional[int] = None, rng: Optional[random.Random] = None) -> FourierExpansion:
        """
        m distinct uniformly sampled masks with nonzero integer coefficients in
        [-coefficient_range, coefficient_range]. Pass `rng` to draw from a
        shared stream, or `seed` for a standalone deterministic draw.
        """
        if n < 0 or m < 0 or coefficient_range < 1:
            raise BadArgs(f"need n >= 0, m >= 0, range >= 1; got n = {n}, m = {m}, range = {coefficient_range}")
        if m > 1 << n:
            raise BadArgs(f"cannot draw {m} distinct masks from 2^{n}")
        if rng is None:
            rng = random.Random(seed)

        masks = rng.sample(range(1 << n), m)
        terms = [(mask, rng.choice((-1, 1)) * rng.randint(1, coefficient_range)) for mask in masks]
        return make_expansion(n, terms)

    def conjecture_scan(self, instances: Iterable[Tuple[str, FourierExpansion]],
                        r_max: int) -> List[ConjectureScanRow]:
        """Ratios ||f||_2r / ||f||_2 next to sqrt(r rho); reports data, no verdict"""
        if r_max < 1:
            raise BadArgs(f"r_max must be >= 1, got {r_max}")
        rows = []
        for family, f in instances:
            second = self.moments.second_moment(f)
            if second == 0:
                logger.debug(f"skipping zero function in family {family}")
                continue
            rho = width(f).width
            for r in range(1, r_max + 1):
                ratio_power = self.moments.even_moment(f, r).value / second ** r
                ratio = _fraction_root(ratio_power, 2 * r)
                reference = math.sqrt(r * max(rho, 1))
                rows.append(ConjectureScanRow(
                    family=family, n=f.n, r=r, rho=rho,
                    ratio=ratio, reference=reference, implied_c=ratio / reference,
                ))
        return rows


def _check_n(n: int) -> None:
    if n < 1:
        raise BadArgs(f"family size n must be >= 1, got {n}")


def _fraction_root(value: Fraction, k: int) -> float:
    return math.exp((math.log(value.numerator) - math.log(value.denominator)) / k)
