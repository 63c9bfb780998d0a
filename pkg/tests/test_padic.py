from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import (
    EXP_3_MOD_81,
    INV_ONE_MINUS_3_MOD_81,
    TEICHMULLER_2_MOD_125,
    exp_partial_sum,
    mod_pn,
    power_by_squaring,
    teichmuller_by_iteration,
    vp_fraction,
)
from padic_ms.errors import DivisionByZero, NotAUnit, OutOfConvergenceDomain, RingMismatch
from padic_ms.padic import (
    INF,
    Padic,
    Qp,
    WeightExponent,
    cyclotomic,
    padic_exp,
    padic_log,
    padic_power,
    ramified_quadratic,
    teichmuller,
    unramified_quadratic,
)

PRIMES = [3, 5, 7]


def test_inverse_geometric_series():
    R = Qp(3, 4)
    inv = (R(1) - 3).inverse()
    assert inv.lift() == INV_ONE_MINUS_3_MOD_81
    assert inv.prec == 4


def test_valuation_and_absolute_value():
    R = Qp(3)
    assert R(12).valuation() == 1
    assert R(12).absolute_value() == Fraction(1, 3)
    assert R(Fraction(5, 9)).valuation() == -2
    assert R(0).valuation() == INF


def test_sqrt_squared_in_unramified():
    U = unramified_quadratic(5, 2)
    s = U.gen()
    assert s * s == 2
    assert s.valuation() == 0


def test_unramified_needs_nonresidue():
    with pytest.raises(ValueError):
        unramified_quadratic(5, 4)


def test_ramified_valuations_are_halves():
    R = ramified_quadratic(3, -3, 20)
    pi = R.gen()
    assert pi.valuation() == Fraction(1, 2)
    assert (pi * pi).valuation() == 1
    assert (pi.inverse() * pi) == 1
    assert pi.inverse().valuation() == Fraction(-1, 2)


def test_cyclotomic_zeta():
    for p in (3, 5, 7):
        C = cyclotomic(p, 12)
        z = C.zeta()
        assert z**p == 1
        assert not (z == 1)
        assert (z - 1).valuation() == Fraction(1, p - 1)
        total = C.zero()
        for j in range(p):
            total = total + z**j
        assert total.is_zero()


def test_ring_mismatch():
    a = unramified_quadratic(5, 2).gen()
    b = ramified_quadratic(5, 5).gen()
    with pytest.raises(RingMismatch):
        a + b
    with pytest.raises(RingMismatch):
        Qp(5)(1) + Qp(7)(1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Qp(5)(0).inverse()


def test_division_by_nonunit_loses_precision():
    R = Qp(5, 10)
    x = R(7) / 25
    assert x.valuation() == -2
    assert x.prec == 8
    assert x * 25 == 7


@given(st.sampled_from(PRIMES), st.integers(-10**6, 10**6).filter(bool),
       st.integers(-10**6, 10**6).filter(bool))
def test_valuation_is_additive(p, a, b):
    R = Qp(p, 20)
    assert (R(a) * R(b)).valuation() == R(a).valuation() + R(b).valuation()
    s = R(a) + R(b)
    assert s.valuation_lower_bound() >= min(R(a).valuation(), R(b).valuation())


@given(st.sampled_from(PRIMES), st.fractions(max_denominator=1000), st.fractions(max_denominator=1000))
def test_field_ops_match_rationals(p, x, y):
    R = Qp(p, 16)
    got = R(x) * R(y) + R(x) - R(y)
    assert got == R(x * y + x - y)
    if y:
        assert R(x) / R(y) == R(x / y)


def test_teichmuller_examples():
    R = Qp(5, 3)
    w = teichmuller(R(2))
    assert w.lift() == TEICHMULLER_2_MOD_125 == teichmuller_by_iteration(2, 5, 3)
    assert w**4 == 1
    assert teichmuller(Qp(5)(1)) == 1
    assert teichmuller(Qp(7)(6)) == -1
    with pytest.raises(NotAUnit):
        teichmuller(R(5))


@given(st.sampled_from(PRIMES), st.integers(1, 10**6))
def test_teichmuller_properties(p, a):
    if a % p == 0:
        return
    R = Qp(p, 20)
    w = teichmuller(R(a))
    assert w ** (p - 1) == 1
    assert (w - a).valuation() >= 1


def test_exp_log_examples():
    assert padic_exp(Qp(5)(0)) == 1
    R = Qp(5, 6)
    assert padic_log(padic_exp(R(5))) == 5
    e = padic_exp(Qp(3, 4)(3))
    assert e.lift() == EXP_3_MOD_81 == exp_partial_sum(3, 3, 4)


def test_exp_domain():
    with pytest.raises(OutOfConvergenceDomain):
        padic_exp(Qp(5)(1))
    with pytest.raises(OutOfConvergenceDomain):
        padic_exp(Qp(2)(2))
    assert padic_exp(Qp(2, 10)(4)).valuation() == 0
    with pytest.raises(OutOfConvergenceDomain):
        padic_log(Qp(5)(2))


@given(st.sampled_from(PRIMES), st.integers(-500, 500), st.integers(-500, 500))
def test_exp_is_multiplicative(p, a, b):
    R = Qp(p, 20)
    x, y = R(a * p), R(b * p)
    assert padic_exp(x + y) == padic_exp(x) * padic_exp(y)


@given(st.sampled_from(PRIMES), st.integers(-10**5, 10**5))
def test_log_inverts_exp(p, a):
    R = Qp(p, 20)
    x = R(a * p)
    assert padic_log(padic_exp(x)) == x


def test_exp_in_ramified_ring():
    R = ramified_quadratic(3, 3, 12)
    pi = R.gen()
    x = pi**3
    assert padic_log(padic_exp(x)) == x


def test_padic_power_examples():
    R = Qp(5, 20)
    assert padic_power(R(2), 0) == 1
    assert padic_power(R(2), 3) == 8
    # j = lim 4*5^m is (0, 0); compare against 2^(4*5^N) by repeated squaring
    j = WeightExponent(0, R(0))
    expected = power_by_squaring(2, 4 * 5**20, 5**20)
    assert padic_power(R(2), j).lift() == expected == 1
    assert WeightExponent.from_int(4 * 5**20, R) == j


@given(st.sampled_from(PRIMES), st.integers(1, 10**4), st.integers(-30, 60))
def test_padic_power_agrees_with_integer_powers(p, n, j):
    if n % p == 0:
        return
    R = Qp(p, 20)
    assert padic_power(R(n), j) == R(Fraction(n) ** j)


@given(st.sampled_from(PRIMES), st.integers(1, 10**4), st.integers(0, 5))
def test_fermat_euler_congruence(p, n, m):
    if n % p == 0:
        return
    R = Qp(p, 20)
    assert (R(n) ** ((p - 1) * p**m) - 1).valuation_lower_bound() >= m + 1


def test_weight_exponent_arithmetic():
    R = Qp(5, 10)
    j = WeightExponent(3, R(-1))
    assert j == WeightExponent.from_int(-1, R)
    assert j.approximant(3) % 4 == 3
    assert (j.approximant(3) + 1) % 125 == 0
    assert j.congruent(-1 + 4 * 125, 3)
    assert not j.congruent(-1 + 4 * 25, 3)
    assert (j + 1) == WeightExponent.from_int(0, R)


def test_precision_never_increases():
    R = Qp(7, 10)
    x = R(3).with_precision(4)
    y = x * R(5) + R(1)
    assert y.prec <= 4
    assert x.with_precision(9).prec == 4


def test_digits_roundtrip():
    R = Qp(7, 10)
    x = R(Fraction(-5, 49))
    y = Padic.from_digits(R, x.digits(), x.shift, x.prec)
    assert y == x and y.prec == x.prec
    assert mod_pn(Fraction(-5), 7, 10) == x.coeffs[0]
    assert vp_fraction(Fraction(-5, 49), 7) == x.valuation()
