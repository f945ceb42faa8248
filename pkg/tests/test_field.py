# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from fractions import Fraction

import numpy as np
import pytest

from qaw_verify.errors import IrrationalValue, SamplingExhausted
from qaw_verify.field import (
    ABCDEF,
    BCDEF,
    ONE,
    Q,
    Q_MINUS_N,
    ParamMonomial,
    PointEnv,
    eval_monomial,
    exact_power,
    get_frame,
    is_admissible,
    monomial,
    next_seed,
    product,
    q_power,
    sample_point,
    split_seed,
    var,
)


def test_next_seed_spread():
    seed = 0
    hist = [seed]
    for i in range(10):
        seed = next_seed(seed)
        hist.append(seed)

    assert len(set(hist)) == len(hist)


def test_next_seed_consistency():
    results = {}
    for seed in range(100):
        results[seed] = next_seed(seed)
        assert next_seed(seed) == next_seed(seed)
        assert next_seed(seed) == results[seed]

    for seed in range(100):
        assert results[seed] == next_seed(seed)


def test_split_seed():
    seed = 0
    for i in range(10):
        seed1, seed2 = split_seed(seed)
        assert seed1 != seed2
        assert seed1 != seed
        assert seed2 != seed
        seed = seed1


def test_monomial_normal_form():
    assert monomial(b=1, c=0) == var("b")
    assert var("b") * var("b", -1) == ONE
    assert monomial(q=1, b=1) / var("b") == Q
    assert ParamMonomial(var_exps={"c": 1, "b": 2}).variables == ("b", "c")
    assert hash(monomial(n=-1)) == hash(Q_MINUS_N)
    assert -(-var("e")) == var("e")


def test_monomial_str():
    assert str(ONE) == "1"
    assert str(Q_MINUS_N) == "q^(-n)"
    assert str(monomial(q=1, n=-1, b=2, c=-1)) == "q^(1-n) b^2/c"
    assert str(-var("d")) == "-d"


def test_monomial_powers():
    half = var("b") ** Fraction(1, 2)
    assert not half.is_integral
    assert half * half == var("b")
    assert (-var("b")) ** 2 == var("b", 2)
    with pytest.raises(ValueError):
        (-var("b")) ** Fraction(1, 2)


def test_monomial_relabel_substitute():
    m = monomial(q=1, b=1, c=-1)
    assert m.relabel({"c": "d"}) == monomial(q=1, b=1, d=-1)
    assert m.substitute({"c": q_power(0, -1)}) == monomial(q=1, n=1, b=1)
    assert product([var("c"), var("d"), var("e")]) == monomial(c=1, d=1, e=1)


def test_encode_rejects_unknown_variables():
    with pytest.raises(ValueError):
        var("z").encode(BCDEF.variables)


def test_point_env_validation():
    with pytest.raises(ValueError):
        PointEnv.of(1, 2, b=3)
    with pytest.raises(ValueError):
        PointEnv.of("1/2", -1, b=3)
    with pytest.raises(ValueError):
        PointEnv.of("1/2", 2, b=0)
    env = PointEnv.of("1/2", 2, b="3/4")
    assert env.value("b") == Fraction(3, 4)
    with pytest.raises(ValueError):
        env.value("c")


def test_fingerprint_is_stable():
    first = PointEnv.of("1/3", 2, b="1/2", c=5)
    second = PointEnv.of("1/3", 2, c=5, b="1/2")
    assert first.fingerprint == second.fingerprint
    assert first.fingerprint != first.with_values(c=6).fingerprint


def test_eval_monomial():
    env = PointEnv.of("1/2", 3, b=3, c="2/5")
    assert eval_monomial(monomial(q=1, n=-1, b=2, c=-1), env) == Fraction(1, 4) ** -1 * 9 * Fraction(5, 2)
    assert eval_monomial(Q_MINUS_N, env) == 8


def test_exact_power():
    assert exact_power(Fraction(4, 9), Fraction(1, 2)) == Fraction(2, 3)
    assert exact_power(Fraction(16, 81), Fraction(-3, 4)) == Fraction(27, 8)
    with pytest.raises(IrrationalValue):
        exact_power(Fraction(2), Fraction(1, 2))


def test_is_admissible():
    env = PointEnv.of("1/2", 2)
    assert not is_admissible(Fraction(0), env)
    assert not is_admissible(Fraction(1), env)
    assert not is_admissible(Fraction(16), env)
    assert is_admissible(Fraction(32), env)
    assert is_admissible(Fraction(32), env, span=5) and not is_admissible(Fraction(32), env, span=6)


def test_frames():
    mappings = list(BCDEF.relabelings())
    assert len(mappings) == 24
    assert all(k == v for k, v in mappings[0].items())
    assert len(list(ABCDEF.relabelings())) == 36
    assert ABCDEF.free_variables == ("a", "b", "c", "d", "e")
    assert get_frame("AW").variables[-1] == "t"
    with pytest.raises(ValueError):
        get_frame("XYZ")


def test_balancing_frame_completes_points():
    env = ABCDEF.complete(PointEnv.of("1/2", 2, a=2, b=3, c=5, d=7, e=11))
    left = eval_monomial(monomial(q=1, n=-1, a=1, b=1, c=1), env)
    assert left == eval_monomial(monomial(d=1, e=1, f=1), env)
    assert ABCDEF.reduce(var("f")).variables == ("a", "b", "c", "d", "e")


def test_sample_point_deterministic_and_admissible():
    guards = [monomial(q=1, b=1, c=-1), var("d"), monomial(c=1, e=1)]
    first = sample_point(BCDEF, 3, 7, guards)
    assert first == sample_point(BCDEF, 3, 7, guards)
    assert 0 < first.q < 1
    assert len(set(first.values.values())) == len(BCDEF.free_variables)
    assert all(is_admissible(eval_monomial(g, first), first) for g in guards)


def test_sample_point_square():
    env = sample_point(BCDEF, 2, 3, square=True)
    for value in list(env.values.values()) + [env.q]:
        exact_power(value, Fraction(1, 2))


def test_sample_point_exhausted():
    with pytest.raises(SamplingExhausted):
        sample_point(BCDEF, 2, 1, max_tries=0)


def _random_monomial(rng):
    exps = {name: int(rng.integers(-3, 4)) for name in BCDEF.variables}
    return ParamMonomial(int(rng.choice([-1, 1])), int(rng.integers(-4, 5)), int(rng.integers(-2, 3)), exps)


def _random_env(rng, n):
    values = {name: Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 20))) for name in BCDEF.variables}
    return PointEnv(Fraction(int(rng.integers(1, 9)), 9), n, values)


def test_monomial_group_laws_random():
    seed_m, seed_e = split_seed(23)
    rng_m, rng_e = np.random.default_rng(seed_m), np.random.default_rng(seed_e)
    for i in range(120):
        x, y = _random_monomial(rng_m), _random_monomial(rng_m)
        env = _random_env(rng_e, i % 5)
        assert eval_monomial(x * y, env) == eval_monomial(x, env) * eval_monomial(y, env)
        assert eval_monomial(x / y, env) == eval_monomial(x, env) / eval_monomial(y, env)
        assert x * x.inverse() == ONE
        assert x.inverse().inverse() == x
        assert hash(x * y) == hash(y * x)


def test_sample_point_guards_random():
    seed = 31
    for i in range(60):
        seed, guard_seed = split_seed(seed)
        rng = np.random.default_rng(guard_seed)
        guards = [_random_monomial(rng) for _ in range(4)]
        n = i % 5
        env = sample_point(BCDEF, n, seed, guards, square=bool(i % 2))
        assert len(set(env.values.values())) == len(BCDEF.variables)
        assert all(is_admissible(eval_monomial(g, env), env) for g in guards if g.var_exps)


def test_sample_point_solved_variable_is_distinct():
    seed = 41
    for i in range(40):
        env = sample_point(ABCDEF, i % 4, seed)
        assert len(set(env.values.values())) == len(ABCDEF.variables)
        assert eval_monomial(monomial(q=1, n=-1, a=1, b=1, c=1), env) == eval_monomial(monomial(d=1, e=1, f=1), env)
        seed = next_seed(seed)


def test_point_env_rejects_zero_parameters():
    with pytest.raises(ValueError):
        PointEnv.of(0, 2, b=3)
    with pytest.raises(ValueError):
        PointEnv.of("1/2", 2, b=3, c=0)
