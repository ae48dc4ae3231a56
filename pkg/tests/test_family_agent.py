import math

import pytest

from models.errors import BadArgs, TooManyVariables
from utils.coefficients import good_vector_bound
from utils.walsh import degree, width


def test_example_shapes(family_agent):
    affine = family_agent.example_affine(5)
    assert affine.m == 6
    assert width(affine).width == 1
    assert degree(affine).degree == 1

    full = family_agent.example_full(4)
    assert full.m == 16
    assert width(full).width == 8

    linear = family_agent.example_linear(3)
    assert linear.m == 3
    assert 0 not in linear.terms

    assert family_agent.example_constant(4).terms == {0: 1}
    assert family_agent.example_constant(4, value=0).m == 0


def test_build_and_errors(family_agent):
    assert family_agent.build("affine", 2).m == 3
    with pytest.raises(BadArgs):
        family_agent.build("cubic", 2)
    with pytest.raises(BadArgs):
        family_agent.example_affine(0)
    with pytest.raises(TooManyVariables):
        family_agent.example_full(40)


def test_random_function_is_deterministic(family_agent):
    first = family_agent.random_function(8, 12, seed=99)
    second = family_agent.random_function(8, 12, seed=99)
    assert first.terms == second.terms
    assert first.m == 12
    assert all(1 <= abs(c) <= 10 for c in first.terms.values())
    assert family_agent.random_function(8, 12, seed=100).terms != first.terms


def test_random_function_errors(family_agent):
    with pytest.raises(BadArgs):
        family_agent.random_function(2, 5, seed=0)
    with pytest.raises(BadArgs):
        family_agent.random_function(2, 1, coefficient_range=0, seed=0)


@pytest.mark.parametrize("n", range(1, 13))
def test_good_vector_lower_bound(moment_agent, family_agent, n):
    f = family_agent.example_linear(n)
    for r in range(1, min(n, 4) + 1):
        assert moment_agent.even_moment(f, r).value >= good_vector_bound(n, r)


def test_scan_affine_rows(family_agent):
    rows = family_agent.conjecture_scan(family_agent.family_instances("affine", 2), 2)
    assert [(row.n, row.r) for row in rows] == [(1, 1), (1, 2), (2, 1), (2, 2)]
    row = rows[-1]
    assert row.rho == 1
    assert row.ratio == pytest.approx((21 / 9) ** 0.25, rel=1e-12)
    assert row.ratio == pytest.approx(1.2359, abs=1e-4)
    assert row.reference == pytest.approx(math.sqrt(2))
    for row in rows:
        if row.r == 1:
            assert row.ratio == pytest.approx(1.0)


def test_scan_constant_rows(family_agent):
    rows = family_agent.conjecture_scan(family_agent.family_instances("constant", 3), 3)
    assert len(rows) == 9
    for row in rows:
        assert row.rho == 0
        assert row.ratio == pytest.approx(1.0)
        assert row.reference == pytest.approx(math.sqrt(row.r))


def test_scan_linear_constant_stays_bounded_below(family_agent):
    rows = family_agent.conjecture_scan([("linear", family_agent.example_linear(40))], 2)
    fourth = rows[-1]
    assert fourth.implied_c >= 1 / math.sqrt(math.e)
    assert fourth.implied_c == pytest.approx(3 ** 0.25 / math.sqrt(2), abs=1e-2)


def test_scan_rejects_bad_rmax(family_agent):
    with pytest.raises(BadArgs):
        family_agent.conjecture_scan([], 0)
