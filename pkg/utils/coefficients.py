"""
Closed-form hypercontractive coefficients and related counting functions
"""

import math
from fractions import Fraction
from typing import List, Tuple

from models.errors import BadArgs, BadExponents, InconsistentProfile


def coeff_classical(q: float, p: float, d: int) -> float:
    """Degree-based coefficient ((q-1)/(p-1))^(d/2)"""
    if not q > p > 1:
        raise BadExponents(f"need q > p > 1, got q = {q}, p = {p}")
    if d < 0:
        raise BadArgs(f"degree must be >= 0, got {d}")
    return ((q - 1) / (p - 1)) ** (d / 2)


def coeff_width_42(rho: int, m: int) -> Tuple[Fraction, float]:
    """Returns (C^4, C) with C^4 = 2*rho + 1 - 2*rho/m"""
    if rho < 0 or m < 0:
        raise BadArgs(f"rho and m must be >= 0, got rho = {rho}, m = {m}")
    if rho >= 1 and m == 0:
        raise InconsistentProfile(f"width {rho} is impossible with no terms")
    if rho == 0 or m == 0:
        fourth = Fraction(1)
    else:
        fourth = 2 * rho + 1 - Fraction(2 * rho, m)
    return fourth, float(fourth) ** 0.25


def coeff_prior_42(rho: int) -> Tuple[int, float]:
    """Returns (2 rho^2, its fourth root): the older width coefficient, stated for rho >= 2"""
    if rho < 2:
        raise BadArgs(f"the 2 rho^2 coefficient needs rho >= 2, got {rho}")
    exact = 2 * rho * rho
    return exact, exact ** 0.25


def coeff_width_2r(r: int, rho: int) -> Tuple[int, float]:
    """Returns ((2r)! * rho^(r-1), its (2r)-th root)"""
    if r < 1 or rho < 1:
        raise BadArgs(f"need r >= 1 and rho >= 1, got r = {r}, rho = {rho}")
    exact = math.factorial(2 * r) * rho ** (r - 1)
    return exact, integer_root(exact, 2 * r)


def coeff_width_qp(q: float, p: float, rho: int) -> Tuple[float, int]:
    """q-to-p coefficient obtained through r = ceil(q/2); returns (coefficient, r)"""
    if not q > p >= 2:
        raise BadExponents(f"need q > p >= 2, got q = {q}, p = {p}")
    r = math.ceil(q / 2)
    _, root = coeff_width_2r(r, rho)
    return root, r


def bell_triangle(rows: int) -> List[List[int]]:
    """First `rows` rows of the Bell triangle; row r starts with B_r"""
    triangle = [[1]]
    for _ in range(1, rows):
        previous = triangle[-1]
        row = [previous[-1]]
        for value in previous:
            row.append(row[-1] + value)
        triangle.append(row)
    return triangle


def bell(r: int) -> int:
    """Number of partitions of an r-element set"""
    if r < 0:
        raise BadArgs(f"r must be >= 0, got {r}")
    if r == 0:
        return 1
    return bell_triangle(r)[-1][-1]


def bell_upper(r: int) -> float:
    """Upper bound (0.792 r / ln(r+1))^r on B_r"""
    if r < 1:
        raise BadArgs(f"r must be >= 1, got {r}")
    return (0.792 * r / math.log(r + 1)) ** r


def coeff_width_2r_refined(r: int, rho: int) -> int:
    """B_r * (2r)!/r! * rho^(r-1): the width-2r constant with r! sharpened to B_r"""
    if r < 1 or rho < 1:
        raise BadArgs(f"need r >= 1 and rho >= 1, got r = {r}, rho = {rho}")
    return bell(r) * (math.factorial(2 * r) // math.factorial(r)) * rho ** (r - 1)


def good_vector_bound(n: int, r: int) -> int:
    """C(n, r) * (2r)! / 2^r: 2r-tuples over [n] where each value occurs 0 or 2 times"""
    if r < 1 or n < 0:
        raise BadArgs(f"need n >= 0 and r >= 1, got n = {n}, r = {r}")
    if r > n:
        raise BadArgs(f"need r <= n, got r = {r}, n = {n}")
    return math.comb(n, r) * math.factorial(2 * r) // (1 << r)


def integer_root(value: int, k: int) -> float:
    # float(value) overflows past ~1e308; go through logarithms instead
    if value.bit_length() > 1000:
        return math.exp(math.log(value) / k)
    return value ** (1.0 / k)
