# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from fractions import Fraction

import pytest

from qaw_verify.askey_wilson import (
    AWPoint,
    RepId,
    aw_degree,
    aw_eval_rep,
    aw_expression,
    aw_guards,
    aw_reference,
    aw_sweep,
    aw_symmetry_check,
    flip,
    get_rep,
    same_series,
    valid_orders,
)
from qaw_verify.field import AW, next_seed, sample_point, var
from qaw_verify.series import q_pochhammer

A = tuple(Fraction(1, k) for k in (2, 3, 5, 7))


def _guards():
    guards = set()
    for rep in RepId:
        for order in valid_orders(rep):
            for g in aw_guards(rep, order):
                guards.add(g)
                guards.add(g.substitute({"t": var("t", -1)}))
    return sorted(guards, key=str)


def test_point_validation():
    pt = AWPoint(2, A, 2, Fraction(1, 3))
    assert pt.x == Fraction(5, 4)
    assert pt.flipped().t == Fraction(1, 2)
    assert pt.permuted((3, 2, 1, 0)).a == tuple(reversed(A))
    with pytest.raises(ValueError):
        AWPoint(2, A[:3], 2, Fraction(1, 3))
    with pytest.raises(ValueError):
        AWPoint(2, A, 2, 1)


def test_get_rep():
    assert get_rep("D5") is RepId.D5
    assert get_rep("aw:def5") is RepId.D7
    with pytest.raises(ValueError):
        get_rep("D8")


def test_valid_orders():
    assert len(valid_orders(RepId.D1)) == 4
    assert len(valid_orders(RepId.D3)) == 24
    assert valid_orders(RepId.D4) == [(1, 2, 3, 4)]
    with pytest.raises(ValueError):
        aw_expression(RepId.D1, (1, 1, 2, 3))


def test_degree_zero_is_one():
    pt = AWPoint(0, A, 3, Fraction(1, 2))
    for rep in RepId:
        assert aw_eval_rep(rep, pt) == 1


def test_all_representations_agree():
    guards = _guards()
    seed = 17
    for i in range(6):
        env = sample_point(AW, i % 4, seed, guards)
        seed = next_seed(seed)
        pt = AWPoint.from_env(env)
        reference = aw_reference(pt)
        for rep in RepId:
            for order in valid_orders(rep)[:3]:
                assert aw_eval_rep(rep, pt, order) == reference


def test_symmetry_check():
    guards = _guards()
    env = sample_point(AW, 3, 23, guards)
    report = aw_symmetry_check(AWPoint.from_env(env))
    assert report.permutation_invariant
    assert all(report.flip_invariant.values())
    assert report.inversion_pairing
    assert report.d3_self_pairing
    assert report.passed


def test_flip_is_an_involution():
    for rep in RepId:
        expr = aw_expression(rep)
        assert same_series(flip(flip(expr)).series, expr.series)


def test_sweep():
    results = aw_sweep(seed=1, n_max=3, envs_per_check=4)
    assert len(results) == sum(len(valid_orders(rep)) for rep in RepId)
    assert all(result.passed for result in results)


def test_degree_and_leading_coefficient():
    q = Fraction(1, 3)
    for n in range(6):
        coeffs = aw_degree(A, q, n)
        assert len(coeffs) == n + 1
        big_a = A[0] * A[1] * A[2] * A[3]
        assert coeffs[0] == 2**n * q_pochhammer(big_a * q ** (n - 1), q, n)
