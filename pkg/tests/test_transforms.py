# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import pytest

from qaw_verify.errors import NotBalanced, TemplateMismatch
from qaw_verify.field import ABCDEF, BCDEF, Q_MINUS_N, monomial, next_seed, sample_point, var
from qaw_verify.series import (
    PhiSpec,
    WSpec,
    converse_parameters,
    invert,
    invert_phi,
    invert_w,
    series_key,
    watson_converse,
    watson_converse_equivalents,
    watson_forms,
    watson_parameters,
)

a, b, c, d, e, f = (var(x) for x in "abcdef")

W0 = WSpec(b, (Q_MINUS_N, c, d, e, f), monomial(q=2, n=1, b=2, c=-1, d=-1, e=-1, f=-1))
BALANCED = PhiSpec((Q_MINUS_N, a, b, c), (d, e, f))


def envs(frame, guards, count=8, seed=3, n_max=4):
    for i in range(count):
        yield sample_point(frame, i % (n_max + 1), seed, guards)
        seed = next_seed(seed)


def test_invert_phi_balanced_value():
    spec = PhiSpec((Q_MINUS_N, b, c, d), (e, f, monomial(q=1, n=-1, b=1, c=1, d=1, e=-1, f=-1)))
    inverted = invert_phi(spec)
    assert inverted.series.zero_pad == 0
    for env in envs(BCDEF, spec.guards() + inverted.guards()):
        assert inverted.evaluate(env) == spec.evaluate(env)


@pytest.mark.parametrize(
    "spec",
    [
        PhiSpec((Q_MINUS_N, b), (c,)),
        PhiSpec((Q_MINUS_N, b, c), (d,), e),
        PhiSpec((Q_MINUS_N, b), (c, d), e),
        PhiSpec((Q_MINUS_N, b, c), (d,), e, zero_pad=1),
    ],
)
def test_invert_phi_padded_value(spec):
    inverted = invert_phi(spec)
    for env in envs(BCDEF, spec.guards() + inverted.guards()):
        assert inverted.evaluate(env) == spec.evaluate(env)


def test_invert_phi_involution():
    spec = PhiSpec((Q_MINUS_N, b, c), (d,), e)
    twice = invert_phi(invert_phi(spec).series).series
    assert series_key(twice, BCDEF.variables) == series_key(spec, BCDEF.variables)
    assert twice.zero_pad == spec.zero_pad


def test_invert_w_value_and_involution():
    inverted = invert_w(W0)
    for env in envs(BCDEF, W0.guards() + inverted.guards()):
        assert inverted.evaluate(env) == W0.evaluate(env)
    twice = invert_w(inverted.series).series
    assert series_key(twice, BCDEF.variables) == series_key(W0, BCDEF.variables)


def test_invert_w_other_arity():
    w = WSpec(b, (Q_MINUS_N, c, d), e)
    inverted = invert(w)
    for env in envs(BCDEF, w.guards() + inverted.guards()):
        assert inverted.evaluate(env) == w.evaluate(env)


def test_watson_forms_match_w():
    forms = watson_forms(W0)
    assert len(forms) == 4
    guards = W0.guards() + sum((form.guards() for form in forms), ())
    for env in envs(BCDEF, guards):
        value = W0.evaluate(env)
        assert all(form.evaluate(env) == value for form in forms)


def test_watson_parameters():
    assert watson_parameters(W0) == (b, c, d, e, f)
    with pytest.raises(TemplateMismatch):
        watson_parameters(WSpec(b, W0.numer, var("c")))
    with pytest.raises(TemplateMismatch):
        watson_parameters(WSpec(b, (Q_MINUS_N, c, d), e))


def test_watson_converse_match_balanced():
    forms = watson_converse(BALANCED, ABCDEF) + watson_converse_equivalents(BALANCED, ABCDEF)
    assert len(forms) == 6
    reduced = [form.reduce(ABCDEF) for form in forms]
    guards = BALANCED.map_monomials(ABCDEF.reduce).guards() + sum((form.guards() for form in reduced), ())
    for env in envs(ABCDEF, guards):
        value = BALANCED.evaluate(env)
        assert all(form.evaluate(env) == value for form in forms)


def test_converse_parameters():
    assert converse_parameters(BALANCED, ABCDEF) == (a, b, c, d, e, f)
    with pytest.raises(NotBalanced):
        converse_parameters(BALANCED)
    with pytest.raises(NotBalanced):
        converse_parameters(PhiSpec((Q_MINUS_N, a, b), (d, e)), ABCDEF)
