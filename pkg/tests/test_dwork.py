import random
from fractions import Fraction

import pytest

from oracles import CANONICAL_LIFT_P3
from padic_ms.dwork import (
    FrobeniusLift,
    artin_hasse_series,
    brute_force_integral,
    canonical_lift,
    dwork_criterion,
    dwork_verdict,
    exp_series,
    frobenius_quotient,
    random_series_for_dwork,
)
from padic_ms.errors import HypothesisViolated
from padic_ms.padic import Qp
from padic_ms.series import MONOMIAL_Q, TruncatedSeries


def series(p, values, N=30):
    return TruncatedSeries(Qp(p, N), MONOMIAL_Q, tuple(values))


def test_canonical_lift_shape():
    phi = canonical_lift(3, 5)
    assert [c.lift() for c in phi.image_of_X.coeffs[:4]] == CANONICAL_LIFT_P3
    assert phi.image_of_X[0].is_zero()
    reduced = [c.lift() % 3 for c in phi.image_of_X.coeffs]
    assert reduced == [0, 0, 0, 1, 0, 0]


def test_bad_lifts_rejected():
    with pytest.raises(HypothesisViolated):
        FrobeniusLift(series(3, [1, 0, 0, 1]))
    with pytest.raises(HypothesisViolated):
        FrobeniusLift(series(3, [0, 1, 0, 1]))


def test_examples():
    phi = canonical_lift(5, 40)
    assert dwork_criterion(series(5, [1, 1] + [0] * 38), phi)
    Q = exp_series(Qp(5, 30), 30)
    assert not dwork_criterion(Q, phi)
    quot = frobenius_quotient(Q, phi)
    assert (quot[5] - 1).valuation_lower_bound() >= 1
    with pytest.raises(HypothesisViolated):
        dwork_criterion(series(5, [1, Fraction(1, 5)]), phi)
    with pytest.raises(HypothesisViolated):
        dwork_criterion(series(5, [2, 1]), phi)


def test_brute_force_examples():
    assert brute_force_integral(series(5, [1, 1]))
    assert not brute_force_integral(exp_series(Qp(5, 30), 6))
    rng = random.Random(0)
    a = series(5, [1] + [rng.randrange(100) for _ in range(10)])
    b = series(5, [1] + [rng.randrange(100) for _ in range(10)])
    assert brute_force_integral(a * b)


def test_artin_hasse_is_integral():
    for p in (3, 5):
        Q = artin_hasse_series(Qp(p, 30), 40)
        assert brute_force_integral(Q)
        assert dwork_verdict(Q).criterion


def test_agreement_on_random_series():
    rng = random.Random(11)
    for p in (3, 5):
        R = Qp(p, 30)
        for _ in range(30):
            v = dwork_verdict(random_series_for_dwork(rng, R, 40))
            assert v.agree and v.safe_window == 40 // p


def test_multiplicativity_within_window():
    rng = random.Random(5)
    p = 3
    R = Qp(p, 30)
    good = []
    while len(good) < 6:
        Q = random_series_for_dwork(rng, R, 40)
        if dwork_verdict(Q).criterion:
            good.append(Q)
    phi = canonical_lift(p, 40)
    for a, b in zip(good, good[1:]):
        assert dwork_criterion(a * b, phi)


def test_frobenius_reduces_to_pth_power():
    rng = random.Random(9)
    p = 5
    phi = canonical_lift(p, 20)
    for _ in range(5):
        Q = series(p, [1] + [rng.randrange(-50, 50) for _ in range(20)])
        lhs = phi.apply(Q)
        rhs = Q
        for _ in range(p - 1):
            rhs = rhs * Q
        for a, b in zip(lhs.coeffs, rhs.coeffs):
            assert (a - b).valuation_lower_bound() >= 1
