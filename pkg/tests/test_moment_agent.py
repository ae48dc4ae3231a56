import math
import random
from fractions import Fraction

import pytest

from agents.moment_agent import MomentAgent, xor_convolve
from models.errors import BadArgs, BadExponent
from models.expansion import make_expansion, mask_of
from utils.settings import Settings
from utils.walsh import expansion_to_table


def test_second_moment_is_parseval(moment_agent, running_example):
    assert moment_agent.second_moment(running_example) == 14
    assert moment_agent.second_moment(make_expansion(2, [])) == 0
    half = make_expansion(1, [(1, Fraction(1, 2))])
    assert moment_agent.second_moment(half) == Fraction(1, 4)


def test_second_moment_matches_table(moment_agent, family_agent):
    rng = random.Random(5)
    for _ in range(20):
        f = family_agent.random_function(6, 10, rng=rng)
        values = expansion_to_table(f).values
        assert moment_agent.second_moment(f) == sum(v * v for v in values) / len(values)


def test_xor_convolve_drops_cancellations():
    left = {0b01: 1, 0b10: 1}
    right = {0b01: 1, 0b10: -1}
    # (x1 + x2)(x1 - x2) = 1 - 1 + x1x2 - x1x2 = 0
    assert xor_convolve(left, right) == {}
    assert xor_convolve({0b01: 2}, {0b01: 3}) == {0: 6}


def test_fourth_moment_running_example(moment_agent, running_example):
    assert moment_agent.even_moment(running_example, 2).value == 392
    assert moment_agent.even_moment(running_example, 1).value == 14


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_affine_fourth_moment(moment_agent, family_agent, n):
    f = family_agent.example_affine(n)
    assert moment_agent.even_moment(f, 2).value == 3 * n * n + 4 * n + 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_full_family_moments(moment_agent, family_agent, n):
    f = family_agent.example_full(n)
    assert moment_agent.second_moment(f) == 2 ** n
    assert moment_agent.even_moment(f, 2).value == 2 ** (3 * n)


def test_linear_moments(moment_agent, family_agent):
    assert moment_agent.even_moment(family_agent.example_linear(4), 2).value == 40
    assert moment_agent.even_moment(family_agent.example_linear(2), 3).value == 32
    assert moment_agent.even_moment(make_expansion(3, [(mask_of([2]), 1)]), 5).value == 1


def test_moments_of_zero_function(moment_agent):
    assert moment_agent.even_moment(make_expansion(4, []), 3).value == 0
    assert moment_agent.p_norm(make_expansion(4, []), 3.0).value == 0.0


def test_even_moment_rejects_bad_order(moment_agent, running_example):
    with pytest.raises(BadArgs):
        moment_agent.even_moment(running_example, 0)


def test_convolution_agrees_with_oracle(moment_agent, family_agent):
    rng = random.Random(2024)
    for _ in range(100):
        n = rng.randint(1, 10)
        m = rng.randint(1, min(32, 1 << n))
        f = family_agent.random_function(n, m, rng=rng)
        for r in (1, 2, 3):
            assert moment_agent.even_moment(f, r).value == moment_agent.even_moment_oracle(f, r).value


def test_rational_coefficients_agree_with_oracle(moment_agent):
    f = make_expansion(3, [(0, Fraction(1, 2)), (mask_of([1, 2]), Fraction(-2, 3)), (mask_of([3]), Fraction(5, 7))])
    for r in (1, 2, 4):
        assert moment_agent.even_moment(f, r).value == moment_agent.even_moment_oracle(f, r).value


def test_small_convolution_cap_falls_back_to_oracle(running_example):
    agent = MomentAgent(Settings(convolution_cap=2))
    assert agent.even_moment(running_example, 3).value == MomentAgent(Settings()).even_moment(running_example, 3).value


def test_moment_is_independent_of_summation_order(moment_agent, running_example):
    values = list(expansion_to_table(running_example).values)
    random.Random(9).shuffle(values)
    assert sum(v ** 4 for v in values) / len(values) == moment_agent.even_moment(running_example, 2).value


def test_odd_moments_vanish_for_odd_functions():
    f = make_expansion(4, [(mask_of([1]), 3), (mask_of([1, 2, 3]), -2), (mask_of([4]), 1)])
    values = expansion_to_table(f).values
    for power in (1, 3, 5):
        assert sum(v ** power for v in values) == 0


def test_p_norm_examples(moment_agent, running_example):
    assert moment_agent.p_norm(running_example, 2.0).value == pytest.approx(math.sqrt(14), rel=1e-12)
    assert moment_agent.p_norm(running_example, 4.0).value == pytest.approx(392 ** 0.25, rel=1e-12)
    affine = make_expansion(1, [(0, 1), (1, 1)])
    assert moment_agent.p_norm(affine, 3.0).value == pytest.approx(4 ** (1 / 3), rel=1e-12)
    assert moment_agent.p_norm(affine, 1.0).value == pytest.approx(1.0)


def test_p_norm_rejects_p_below_one(moment_agent, running_example):
    with pytest.raises(BadExponent):
        moment_agent.p_norm(running_example, 0.5)


def test_p_norm_is_monotone(moment_agent, family_agent):
    rng = random.Random(17)
    for _ in range(25):
        n = rng.randint(1, 8)
        f = family_agent.random_function(n, rng.randint(1, min(12, 1 << n)), rng=rng)
        norms = [moment_agent.p_norm(f, p).value for p in (1.0, 1.5, 2.0, 3.0, 4.0, 6.0)]
        for lower, higher in zip(norms, norms[1:]):
            assert lower <= higher * (1 + 1e-12)
