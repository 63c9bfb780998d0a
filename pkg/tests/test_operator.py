import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import C_2_3_2, c_coeff_binomial, power_by_squaring, theta_euler_oracle
from padic_ms.errors import ConvergenceHypothesisViolated, NotStabilized, PrecisionExhausted
from padic_ms.operator import (
    OperatorParams,
    c_coeff,
    c_coeff_by_limit,
    c_coeffs_int,
    limit_sequence,
    p_stabilize,
    p_stabilize_average,
    theta_continuous_result,
    theta_k_j_continuous,
    theta_k_j_integer,
    truncation_index,
)
from padic_ms.padic import Qp, WeightExponent, padic_power, unramified_quadratic
from padic_ms.series import MONOMIAL_Q, Q_MINUS_ONE, TruncatedSeries


def series(p, values, N=20, basis=MONOMIAL_Q):
    return TruncatedSeries(Qp(p, N), basis, tuple(values))


def random_values(rng, p, order, stabilized=False):
    return [0 if stabilized and n % p == 0 else rng.randrange(p**6) for n in range(order + 1)]


# c_i(j) ----------------------------------------------------------------

def test_c_coeff_examples():
    R = Qp(5, 20)
    for j in range(4):
        assert c_coeff(0, j, 3, R) == 1
    assert c_coeff(0, WeightExponent(1, R(17)), 2) == 1
    assert c_coeff(4, 3, 2, R) == 0
    assert c_coeff(2, 3, 2, R) == C_2_3_2


@given(st.integers(0, 40), st.integers(0, 40), st.integers(0, 8))
def test_c_coeff_integer_route_matches_binomials(i, j, k):
    if j + k - 1 < 0:
        return
    assert c_coeffs_int(j, k, i + 1)[i] == c_coeff_binomial(i, j, k)


def test_c_coeff_factorial_divides():
    import math
    for j in range(30):
        for i, c in enumerate(c_coeffs_int(j, 2, 30)):
            assert c % math.factorial(i) == 0


def test_c_coeff_general_j_matches_limit_of_integer_approximants():
    p, N = 5, 20
    R = Qp(p, N)
    rng = random.Random(1)
    for _ in range(5):
        j = WeightExponent(rng.randrange(p - 1), R(rng.randrange(p**N)))
        for i in (1, 2, 5, 9):
            direct = c_coeff(i, j, 2)
            prev = None
            for m in (4, 8, 12):
                approx = c_coeff_by_limit(i, j, 2, m)
                gap = (approx - direct).valuation_lower_bound()
                assert gap >= m - 1 - i  # only lost to the division by i!
                if prev is not None:
                    assert gap >= prev
                prev = gap


def test_c_coeff_divisibility_small():
    for p in (3, 5):
        R = Qp(p, 30)
        for j in range(60):
            cs = c_coeffs_int(j, 2, 3 * p**2)
            for t in (1, 2):
                for i in range(p**t, len(cs)):
                    assert cs[i] == 0 or R(cs[i]).valuation() >= t


# stabilization ----------------------------------------------------------

def test_stabilize_examples():
    p = 5
    assert p_stabilize(series(p, [7, 0, 0])).is_zero()
    assert p_stabilize_average(series(p, [7, 0, 0])).is_zero()
    f = series(p, [0, 1] + [0] * 3 + [1] + [0] * 4 + [1])
    assert p_stabilize(f) == series(p, [0, 1] + [0] * 9)
    assert p_stabilize_average(f) == p_stabilize(f)


def test_stabilize_in_qminus1_basis_keeps_basis():
    f = series(3, [1, 2, 3, 4], basis=Q_MINUS_ONE)
    g = p_stabilize(f)
    assert g.basis == Q_MINUS_ONE
    assert g.to_monomial() == p_stabilize(f.to_monomial())


@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(-10**4, 10**4), min_size=1, max_size=16))
def test_stabilize_idempotent_and_equivalent(p, values):
    f = series(p, values, N=12)
    g = p_stabilize(f)
    assert p_stabilize(g) == g
    assert g.is_stabilized()
    assert p_stabilize_average(f) == g


# theta, integer weights ----------------------------------------------------

def test_theta_integer_examples():
    R = Qp(5, 20)
    y = R(7)
    assert theta_k_j_integer(series(5, [0, 1]), 1, OperatorParams(3, y)) == 1 + 3 * y
    f = series(5, [4, 1, 2])
    assert theta_k_j_integer(f, 0, OperatorParams(2, y)) == f.theta_constant_term()
    assert theta_k_j_integer(series(5, [0] * 4), 3, OperatorParams(2, y)).is_zero()


@given(st.integers(0, 8), st.lists(st.integers(0, 10**5), min_size=1, max_size=12), st.integers(-3, 6))
def test_ordinary_locus_is_euler_power(j, values, k):
    p, N = 5, 20
    f = series(p, values, N)
    got = theta_k_j_integer(f, j, OperatorParams.ordinary(k, Qp(p, N)))
    mono = f
    for _ in range(j):
        mono = mono.euler_derivative()
    assert got == mono.theta_constant_term()
    assert got.lift() == theta_euler_oracle(values, j, p, N)


def test_theta_integer_against_direct_sum():
    p, N = 7, 20
    R = Qp(p, N)
    rng = random.Random(2)
    for _ in range(10):
        values = random_values(rng, p, 10)
        y = rng.randrange(1, 10**6)
        k, j = rng.randrange(0, 6), rng.randrange(0, 7)
        expected = sum(c_coeff_binomial(i, j, k) * y**i * theta_euler_oracle(values, j - i, p, N)
                       for i in range(j + 1)) if j + k - 1 >= 0 else None
        if expected is None:
            continue
        got = theta_k_j_integer(series(p, values), j, OperatorParams(k, R(y)))
        assert got.lift() == expected % p**N


def test_unnormalized_and_normalized_differ_by_p_power():
    p, N = 5, 30
    R = Qp(p, N)
    f = series(p, [0, 1, 2, 3], N)
    params = OperatorParams(2, R(3), b=1)
    raw = theta_k_j_integer(f, 2, params)
    norm = theta_k_j_integer(f, 2, params, normalized=True)
    assert norm == raw * p**2


def test_linearity():
    p = 5
    R = Qp(p, 20)
    rng = random.Random(4)
    params = OperatorParams(2, R(6))
    for _ in range(5):
        a = series(p, random_values(rng, p, 8, True))
        b = series(p, random_values(rng, p, 8, True))
        j = WeightExponent(rng.randrange(4), R(rng.randrange(p**20)))
        assert theta_k_j_continuous(a + b, j, params) == theta_k_j_continuous(a, j, params) + theta_k_j_continuous(b, j, params)
        assert theta_k_j_integer(a.scale(3), 3, params) == theta_k_j_integer(a, 3, params) * 3


# theta, continuous weights ---------------------------------------------------

def test_continuous_examples():
    p, N = 5, 20
    R = Qp(p, N)
    f = series(p, [0, 0, 0, 1])
    j = WeightExponent(0, R(0))  # limit of 4*5^m
    value = theta_k_j_continuous(f, j, OperatorParams.ordinary(2, R))
    assert value.lift() == power_by_squaring(3, 4 * 5**N, 5**N) == 1
    g = series(p, [0, 3, 8, 1, 2, 0, 11])
    minus_one = WeightExponent(p - 2, R(-1))
    got = theta_k_j_continuous(g, minus_one, OperatorParams.ordinary(2, R))
    assert got == g.formal_primitive().theta_constant_term()


def test_continuous_matches_integer_on_embedded_integers():
    p, N = 5, 20
    U = unramified_quadratic(p, 2, N)
    rng = random.Random(8)
    for _ in range(8):
        f = series(p, random_values(rng, p, 9))
        y = U([rng.randrange(1, p**N), rng.randrange(1, p**N)])
        if not y.is_unit():
            continue
        params = OperatorParams(rng.randrange(0, 5), y)
        j = rng.randrange(0, 6)
        a = theta_k_j_continuous(p_stabilize(f), j, params)
        b = theta_k_j_integer(p_stabilize(f), j, params, normalized=True)
        assert a == b


def test_continuous_requires_stabilized_series_and_convergence():
    p = 5
    R = Qp(p, 20)
    j = WeightExponent(1, R(3))
    with pytest.raises(NotStabilized):
        theta_k_j_continuous(series(p, [1, 1]), j, OperatorParams.ordinary(2, R))
    with pytest.raises(ConvergenceHypothesisViolated):
        theta_k_j_continuous(series(p, [0, 1]), j, OperatorParams(2, R(Fraction(1, 5))))


def test_zero_series_gives_zero():
    R = Qp(5, 20)
    res = theta_continuous_result(series(5, [0, 0, 0]), WeightExponent(1, R(3)), OperatorParams(2, R(1)))
    assert res.value.is_zero() and res.truncation_index == 0


def test_truncation_index_is_rigorous():
    # every dropped term is below the target, the last kept one is not necessarily
    p = 3
    R = Qp(p, 30)
    params = OperatorParams(2, R(1))
    idx = truncation_index(params, 0, 30)
    from padic_ms.padic import vp_factorial
    for i in range(idx + 1, idx + 200):
        assert vp_factorial(i, p) >= 30


def test_continuity_modulus_ordinary():
    p, N = 5, 20
    R = Qp(p, N)
    rng = random.Random(12)
    params = OperatorParams.ordinary(2, R)
    for _ in range(5):
        f = series(p, random_values(rng, p, 12, True))
        j = WeightExponent(rng.randrange(4), R(rng.randrange(p**N)))
        for m in range(1, 6):
            j2 = j + (p - 1) * p**m * rng.randrange(1, 50)
            gap = theta_k_j_continuous(f, j, params) - theta_k_j_continuous(f, j2, params)
            assert gap.valuation_lower_bound() >= m + 1


def test_continuity_gaps_grow_with_nonzero_ratio():
    p, N = 5, 20
    R = Qp(p, N)
    f = series(p, [0, 1, 2, 3, 4, 0, 6])
    params = OperatorParams(2, R(2))
    j = WeightExponent(1, R(12345))
    gaps = [(theta_k_j_continuous(f, j, params) - theta_k_j_continuous(f, j + 4 * p**m, params)).valuation_lower_bound()
            for m in range(1, 7)]
    assert all(a <= b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] > gaps[0]


# limits ------------------------------------------------------------------------

def test_limit_examples():
    p, N = 3, 20
    R = Qp(p, N)
    rng = random.Random(0)
    f = series(p, random_values(rng, p, 15, True))
    table = limit_sequence(f, 0, OperatorParams.ordinary(2, R), 5)
    assert table.target == sum(v for v in (c.lift() for c in f.coeffs))
    assert all(r.gap_valuation >= r.m + 1 for r in table.rows)
    g = series(p, [0, 0, 0, 1])
    table = limit_sequence(g, 0, OperatorParams.ordinary(2, R), 3)
    assert table.target.is_zero()
    for r in table.rows:
        assert r.value.valuation_lower_bound() >= min(N, (p - 1) * p**r.m)


def test_limit_rows_match_theta_integer():
    p, N = 5, 20
    R = Qp(p, N)
    params = OperatorParams(2, R(3))
    f = series(p, [0, 1])
    table = limit_sequence(f, 1, params, 2)
    for r in table.rows:
        assert r.value == theta_k_j_integer(f, r.exponent, params, normalized=True)


def test_limit_precision_guard():
    R = Qp(5, 4)
    with pytest.raises(PrecisionExhausted):
        limit_sequence(series(5, [0, 1], N=4), 0, OperatorParams.ordinary(2, R), 4)
