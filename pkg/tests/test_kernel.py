# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from fractions import Fraction

import numpy as np
import pytest

from qaw_verify.errors import DivergentDenominator, NoTerminatingSlot, SpecialPointB, ZeroBase
from qaw_verify.field import BCDEF, Q_MINUS_N, PointEnv, monomial, sample_point, split_seed, var
from qaw_verify.series import (
    N,
    TWO_N,
    PhiSpec,
    PochFactor,
    PochLength,
    Prefactor,
    WSpec,
    balance_level,
    eval_phi,
    eval_w,
    is_very_well_poised,
    poch_base_invert,
    q_pochhammer,
    series_key,
)

b, c, d, e = var("b"), var("c"), var("d"), var("e")


def test_q_pochhammer():
    assert q_pochhammer(Fraction(1, 2), Fraction(1, 3), 0) == 1
    assert q_pochhammer(Fraction(1, 2), Fraction(1, 3), 2) == Fraction(5, 12)
    assert q_pochhammer(Fraction(1, 9), Fraction(3), 3) == 0
    with pytest.raises(ValueError):
        q_pochhammer(Fraction(1, 2), Fraction(1, 3), -1)


def test_poch_base_invert():
    for k in range(6):
        a, q = Fraction(2, 3), Fraction(1, 2)
        assert poch_base_invert(a, q, k) == q_pochhammer(a, 1 / q, k)
    with pytest.raises(ZeroBase):
        poch_base_invert(Fraction(0), Fraction(1, 2), 2)


def test_poch_length():
    assert str(N) == "n"
    assert str(TWO_N) == "2n"
    assert str(PochLength.of(1)) == "1"
    assert str(PochLength(1, 1)) == "n+1"
    assert TWO_N.resolve(3) == 6
    with pytest.raises(ValueError):
        PochLength(-1, 0).resolve(2)


def test_q_chu_vandermonde():
    spec = PhiSpec((Q_MINUS_N, b), (c,))
    for n in range(5):
        env = PointEnv.of("1/3", n, b="2/5", c="7/11")
        q, bv, cv = env.q, env.value("b"), env.value("c")
        expected = q_pochhammer(cv / bv, q, n) / q_pochhammer(cv, q, n) * bv**n
        assert eval_phi(spec, env) == expected


def test_terminating_at_zero():
    spec = PhiSpec((Q_MINUS_N, b, c), (d, e))
    assert eval_phi(spec, PointEnv.of("1/2", 0, b=2, c=3, d=5, e=7)) == 1


def test_divergent_denominator():
    spec = PhiSpec((Q_MINUS_N, b), (c,))
    with pytest.raises(DivergentDenominator) as e:
        eval_phi(spec, PointEnv.of("1/3", 3, b="2/5", c=3))
    assert e.value.k == 2
    assert e.value.parameter == "c"


def test_no_terminating_slot():
    with pytest.raises(NoTerminatingSlot):
        PhiSpec((b, c), (d,)).terminating_index
    with pytest.raises(NoTerminatingSlot):
        WSpec(b, (c, d), e).terminating_index


def test_excess_and_balance():
    balanced = PhiSpec((Q_MINUS_N, b, c, d), (e, var("f"), monomial(q=1, n=-1, b=1, c=1, d=1, e=-1, f=-1)))
    assert balanced.excess == 0
    assert balance_level(balanced) == 1
    assert PhiSpec((Q_MINUS_N, b, c), (d,)).excess == -1
    padded = PhiSpec((Q_MINUS_N, b), (), zero_pad=1)
    assert padded.excess == 0
    assert balance_level(padded) is None
    assert balance_level(PhiSpec((Q_MINUS_N, b), (c,))) is None


def test_six_w_five_summation():
    w = WSpec(b, (c, d, Q_MINUS_N), monomial(q=1, n=1, b=1, c=-1, d=-1))
    qb = monomial(q=1, b=1)
    closed = Prefactor(
        poch_factors=(
            PochFactor(qb),
            PochFactor(qb / (c * d)),
            PochFactor(qb / c, N, -1),
            PochFactor(qb / d, N, -1),
        )
    )
    seed = 5
    for n in range(5):
        env = sample_point(BCDEF, n, seed, w.guards() + closed.guards())
        assert eval_w(w, env) == closed.evaluate(env)
        seed += 1


def test_expand_matches_very_well_poised_sum():
    w = WSpec(b, (Q_MINUS_N, c, d, e), monomial(q=2, n=1, b=2, c=-1, d=-1, e=-1))
    expanded = w.expand()
    assert is_very_well_poised(expanded)
    assert expanded.excess == 0
    for n in range(4):
        env = sample_point(BCDEF, n, 11 + n, w.guards(), square=True)
        assert eval_w(w, env) == eval_phi(expanded, env)


def test_special_point_b():
    w = WSpec(b, (Q_MINUS_N, c, d), e)
    with pytest.raises(SpecialPointB):
        eval_w(w, PointEnv.of("1/2", 2, b=4, c=3, d=5, e=7))


def test_series_key_ignores_order():
    left = PhiSpec((Q_MINUS_N, b, c), (d, e))
    right = PhiSpec((c, Q_MINUS_N, b), (e, d))
    assert series_key(left, BCDEF.variables) == series_key(right, BCDEF.variables)
    assert series_key(left, BCDEF.variables) != series_key(PhiSpec((Q_MINUS_N, b, d), (c, e)), BCDEF.variables)


def test_prefactor_evaluate():
    pre = Prefactor(1, 1, b, (PochFactor(b),))
    env = PointEnv.of("1/2", 2, b=3)
    # q^1 * (-1)^2 * 3^2 * (1 - 3)(1 - 3/2)
    assert pre.evaluate(env) == Fraction(9, 2)


def test_prefactor_algebra():
    pre = Prefactor(1, 1, b, (PochFactor(b), PochFactor(c, N, -1)))
    assert (pre / pre).simplify().is_identity
    assert (pre * pre.inverse()).simplify().poch_factors == ()
    assert pre.relabel({"b": "d"}).power_base == d
    env = PointEnv.of("1/3", 3, b="2/5", c="7/11")
    assert (pre * pre).evaluate(env) == pre.evaluate(env) ** 2


def test_prefactor_divergent_denominator():
    pre = Prefactor(poch_factors=(PochFactor(c, N, -1),))
    with pytest.raises(DivergentDenominator):
        pre.evaluate(PointEnv.of("1/2", 3, c=4))


def _fraction(rng, bound=12):
    sign = 1 if rng.integers(0, 2) else -1
    return Fraction(sign * int(rng.integers(1, bound)), int(rng.integers(1, bound)))


def _base_q(rng):
    den = int(rng.integers(2, 12))
    return Fraction(int(rng.integers(1, den)), den)


def test_q_pochhammer_concatenation_random():
    rng = np.random.default_rng(split_seed(13)[0])
    for _ in range(200):
        a, q = _fraction(rng), _base_q(rng)
        j, k = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        assert q_pochhammer(a, q, j + k) == q_pochhammer(a, q, j) * q_pochhammer(a * q**j, q, k)


def test_poch_base_invert_random():
    rng = np.random.default_rng(split_seed(13)[1])
    for _ in range(200):
        a, q, k = _fraction(rng), _base_q(rng), int(rng.integers(0, 8))
        assert poch_base_invert(a, q, k) == q_pochhammer(a, 1 / q, k)


def test_expand_matches_very_well_poised_sum_random():
    w = WSpec(b, (Q_MINUS_N, c, d, e, var("f")), monomial(q=2, n=1, b=2, c=-1, d=-1, e=-1, f=-1))
    expanded = w.expand()
    seed = 17
    for i in range(50):
        seed, point_seed = split_seed(seed)
        env = sample_point(BCDEF, i % 6, point_seed, w.guards(), square=True)
        assert eval_w(w, env) == eval_phi(expanded, env)
