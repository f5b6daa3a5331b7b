from math import gcd

import pytest
from sympy import totient

from semistab.classical import (
    PrimePower,
    cyclotomic_factor_profile,
    cyclotomic_poly,
    gl_has_element_of_order,
    minus_one_is_power,
    mult_order,
    poly_str,
    prime_powers_up_to,
    sp_group_order,
    sp_group_order_int,
    sp_has_element_of_order,
)
from semistab.errors import PreconditionError
from semistab.spectra import enumerate_group, standard_generators


def naive_order(ell, n):
    d, x = 1, ell % n
    while x != 1 % n:
        x = x * ell % n
        d += 1
    return d


def poly_divide(num, den):
    """Exact quotient of integer polynomials (constant term first), den monic."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "division left a remainder"
    return q


def cyclotomic_by_division(n):
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = poly_divide(poly, cyclotomic_by_division(d))
    return poly


def test_prime_power():
    assert PrimePower.of(8) == PrimePower(2, 3)
    assert PrimePower(3, 2).value == 9
    for bad in (1, 6, 0):
        with pytest.raises(PreconditionError):
            PrimePower.of(bad)
    with pytest.raises(PreconditionError):
        PrimePower(4, 1)
    assert [p.value for p in prime_powers_up_to(10)] == [2, 3, 4, 5, 7, 8, 9]


def test_mult_order_examples():
    assert mult_order(5, 8) == 2
    assert mult_order(7, 1) == 1
    assert mult_order(2, 5) == 4
    with pytest.raises(PreconditionError):
        mult_order(3, 6)


def test_mult_order_matches_naive():
    for ell in (2, 3, 5, 7, 11, 13):
        for n in range(2, 60):
            if gcd(ell, n) == 1:
                assert mult_order(ell, n) == naive_order(ell, n)


def test_gl_examples():
    assert gl_has_element_of_order(4, PrimePower.of(5), 2)
    assert not gl_has_element_of_order(1, PrimePower.of(4), 7)
    assert {pow(g, 1, 7) for g in range(1, 7)} and sorted({naive_order(g, 7) for g in range(1, 7)}) == [1, 2, 3, 6]
    assert gl_has_element_of_order(2, 9, 19)  # 19 = 1 mod 9
    with pytest.raises(PreconditionError):
        gl_has_element_of_order(3, 4, 2)


def test_sp_examples():
    assert not sp_has_element_of_order(1, 8, 5)
    assert sp_has_element_of_order(1, 4, 5)
    for q in (3, 5, 7):
        for ell in (q * k + 1 for k in range(2, 30)):
            if all(ell % p for p in range(2, int(ell**0.5) + 1)):
                assert sp_has_element_of_order(1, q, ell)
    assert sp_has_element_of_order(1, 2, 3)
    with pytest.raises(PreconditionError):
        sp_has_element_of_order(1, 5, 5)


def test_sp_two_power_rule():
    # ell = 5 mod 8: order 2^r needs 2^(r-1) <= 2m
    for ell in (5, 13, 29, 37):
        for m in range(1, 5):
            for r in range(3, 8):
                assert sp_has_element_of_order(m, 2**r, ell) == (2 ** (r - 1) <= 2 * m)


def test_minus_one_is_power():
    assert not minus_one_is_power(5, 8)
    assert minus_one_is_power(3, 4)
    assert minus_one_is_power(2, 5)


def test_sp_group_order_values():
    assert int(sp_group_order(1, 3)) == 24
    assert int(sp_group_order(1, 5)) == 120
    assert int(sp_group_order(2, 2)) == 720
    assert str(sp_group_order(1, 3)) == "2^3 * 3"
    for m, ell in ((1, 3), (1, 5), (2, 2)):
        assert len(enumerate_group(standard_generators("Sp", m, ell), ell)) == sp_group_order_int(m, ell)


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == [-1, 1]
    assert cyclotomic_poly(8) == [1, 0, 0, 0, 1]
    assert cyclotomic_poly(12) == [1, 0, -1, 0, 1]
    assert poly_str(cyclotomic_poly(12)) == "x^4 - x^2 + 1"


def test_cyclotomic_matches_division():
    for n in range(1, 41):
        assert cyclotomic_poly(n) == cyclotomic_by_division(n)


def coset_profile(n, ell):
    """(number of factors, number of self-reciprocal factors) from cosets of <ell> in (Z/n)^x."""
    units = [a for a in range(1, n + 1) if gcd(a, n) == 1]
    seen, count, selfrec = set(), 0, 0
    for a in units:
        a %= n
        if a in seen:
            continue
        orbit = {a * pow(ell, i, n) % n for i in range(mult_order(ell, n))}
        seen |= orbit
        count += 1
        selfrec += (-a) % n in orbit
    return count, selfrec


def test_profile_examples():
    p = cyclotomic_factor_profile(8, 5)
    assert p.degrees == [2, 2]
    assert [f.self_reciprocal for f in p.factors] == [False, False]
    assert p.factors[0].mate == 1
    p = cyclotomic_factor_profile(3, 7)
    assert p.degrees == [1, 1] and p.factors[0].mate == 1
    p = cyclotomic_factor_profile(4, 3)
    assert p.degrees == [2] and p.factors[0].self_reciprocal
    with pytest.raises(PreconditionError):
        cyclotomic_factor_profile(6, 3)


def test_profile_matches_cosets():
    for n in range(2, 36):
        for ell in (2, 3, 5, 7, 11, 13):
            if n % ell == 0:
                continue
            prof = cyclotomic_factor_profile(n, ell)
            count, selfrec = coset_profile(n, ell)
            assert len(prof.factors) == count
            assert sum(f.self_reciprocal for f in prof.factors) == selfrec
            assert sum(prof.degrees) == totient(n)
