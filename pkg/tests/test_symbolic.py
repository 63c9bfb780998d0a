import random

import pytest

from oracles import CLOSED_FORM_K2_J3_TOP
from padic_ms.errors import SingularMatrix
from padic_ms.symbolic import (
    LinearOperator,
    RationalExpr,
    check_delta_identity,
    check_intertwining,
    delta_k,
    delta_power_closed,
    delta_power_composed,
    det,
    matmul,
    random_rational_expr,
    sample_matrices,
    slash_action,
)

Z = RationalExpr.zdR()
W = RationalExpr.zbar()
ONE = RationalExpr(1)
ID = ((1, 0), (0, 1))


def pool(n=8, seed=11):
    rng = random.Random(seed)
    return [random_rational_expr(rng) for _ in range(n)]


def test_canonical_form_is_unique():
    a = (2 * Z * W - 2 * W) / (4 * Z - 4)
    assert a == W / 2
    assert str((Z - W) / (2 * Z - 2 * W)) == "1/2"
    b = 1 / (3 * Z + 6)
    assert b.den.LC == 1


def test_derivative_treats_zbar_as_constant():
    assert W.diff_zdR().is_zero()
    assert (Z**3 * W).diff_zdR() == 3 * Z**2 * W


def test_leibniz_rule_on_random_pairs():
    fs = pool(10)
    for F, G in zip(fs, fs[1:]):
        assert (F * G).diff_zdR() == F * G.diff_zdR() + G * F.diff_zdR()


def test_delta_examples():
    assert delta_k(0)(ONE).is_zero()
    assert delta_k(2)(ONE) == 2 / (Z - W)
    assert delta_k(1)(Z - W) == 2


def test_delta_powers_small_cases():
    assert delta_power_composed(3, 0) == LinearOperator.identity()
    assert delta_power_closed(3, 0) == LinearOperator.identity()
    assert delta_power_composed(3, 1) == delta_k(3)
    assert delta_power_closed(5, 1) == delta_k(5)
    assert delta_power_composed(2, 2) == delta_power_closed(2, 2)
    top = delta_power_closed(2, 3).terms[0]
    assert top == CLOSED_FORM_K2_J3_TOP / (Z - W) ** 3


def test_operator_pretty_print_golden():
    assert delta_k(2).pretty() == "(1)*D + ((2)/(zdR - zbar))"
    assert LinearOperator().pretty() == "0"
    assert delta_power_closed(1, 2).pretty() == (
        "(1)*D^2 + ((4)/(zdR - zbar))*D + ((2)/(zdR**2 - 2*zdR*zbar + zbar**2))")


def test_composition_applies_in_order():
    fs = pool(4)
    a, b = delta_k(1), delta_k(4)
    for F in fs:
        assert a.compose(b)(F) == a(b(F))


def test_closed_form_identity_small_grid():
    assert check_delta_identity(3, 3) == []


def test_mobius_examples():
    F = Z**2 + W
    assert F.mobius_substitute(ID) == F
    assert Z.mobius_substitute(((1, 0), (0, 5)), both_vars=True) == 5 * Z
    assert W.mobius_substitute(((1, 0), (0, 5)), both_vars=False) == W
    with pytest.raises(SingularMatrix):
        F.mobius_substitute(((1, 2), (2, 4)))


def test_mobius_composition_law():
    mats = sample_matrices(6, seed=2)
    for F in pool(4):
        for g1, g2 in zip(mats, mats[1:]):
            assert F.mobius_substitute(g1).mobius_substitute(g2) == F.mobius_substitute(matmul(g2, g1))


def test_gap_transformation_factor():
    for g in sample_matrices(10, seed=4):
        (a, b), (c, d) = g
        lhs = (Z - W).mobius_substitute(g)
        assert lhs == det(g) * (Z - W) / ((c * Z + a) * (c * W + a))


def test_slash_examples():
    F = Z * W + 1
    assert slash_action(F, ID, 4) == F
    g = ((2, 1), (1, 3))
    assert slash_action(F, g, 0) == F.mobius_substitute(g)
    assert slash_action(ONE, ((1, 1), (0, 1)), 2) == 1


def test_slash_composition_carries_a_sign():
    # (bc - ad)^k is not multiplicative: the cocycle agrees up to (-1)^k
    mats = sample_matrices(5, seed=9)
    for F in pool(3):
        for g1, g2 in zip(mats, mats[1:]):
            for k in range(4):
                two_step = slash_action(slash_action(F, g1, k), g2, k)
                assert two_step == (-1) ** k * slash_action(F, matmul(g2, g1), k)


def test_intertwining_twisted_for_all_determinants():
    mats = sample_matrices(6, seed=1)
    assert check_intertwining(pool(5), [(g, k) for k, g in enumerate(mats)]) == []


def test_literal_intertwining_only_for_det_one():
    fs = pool(3)
    unimodular = [g for g in sample_matrices(40, seed=1) if det(g) == 1][:3]
    other = [g for g in sample_matrices(40, seed=1) if det(g) not in (0, 1)][:3]
    assert check_intertwining(fs, [(g, 2) for g in unimodular], twisted=False) == []
    assert len(check_intertwining(fs, [(g, 2) for g in other], twisted=False)) == len(fs) * len(other)
