# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import enum
import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import sympy

from qaw_verify.errors import EvaluationError
from qaw_verify.field import AW, Q, Q_MINUS_N, PointEnv, next_seed, product, q_power, sample_point, var
from qaw_verify.series import N, TWO_N, Expression, PhiSpec, PochFactor, Prefactor, WSpec, invert_phi, series_key

logger = logging.getLogger(__name__)

Order = Tuple[int, int, int, int]
DEFAULT_ORDER: Order = (1, 2, 3, 4)


class RepId(str, enum.Enum):
    D1 = "aw:def1"
    D2 = "aw:def2"
    D3 = "aw:def3"
    D4 = "aw:def4"
    D5 = "aw:def6"
    D6 = "aw:def7"
    D7 = "aw:def5"


def get_rep(name: str) -> RepId:
    """Looks a representation up by member name (``D2``) or label (``aw:def2``)."""
    try:
        return RepId[name]
    except KeyError:
        pass
    try:
        return RepId(name)
    except ValueError as e:
        raise ValueError(f"Unknown representation {name}") from e


# which entries of (p, r, t, u) a representation depends on
_ORDER_DEPTH = {
    RepId.D1: 1,
    RepId.D2: 1,
    RepId.D3: 4,
    RepId.D4: 0,
    RepId.D5: 1,
    RepId.D6: 1,
    RepId.D7: 4,
}


@dataclass(frozen=True)
class AWPoint:
    n: int
    a: Tuple[Fraction, Fraction, Fraction, Fraction]
    t: Fraction
    q: Fraction

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.a)
        if len(a) != 4:
            raise ValueError(f"Expected four parameters a1..a4, got {len(a)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "q", Fraction(self.q))
        # PointEnv validates q, n and nonzero values
        self.env()

    @classmethod
    def from_env(cls, env: PointEnv) -> "AWPoint":
        return cls(env.n, tuple(env.value(f"a{k}") for k in range(1, 5)), env.value("t"), env.q)

    def env(self) -> PointEnv:
        values = {f"a{k}": x for k, x in enumerate(self.a, start=1)}
        values["t"] = self.t
        return PointEnv(self.q, self.n, values)

    def flipped(self) -> "AWPoint":
        return AWPoint(self.n, self.a, 1 / self.t, self.q)

    def permuted(self, perm: Sequence[int]) -> "AWPoint":
        return AWPoint(self.n, tuple(self.a[i] for i in perm), self.t, self.q)

    @property
    def x(self) -> Fraction:
        return (self.t + 1 / self.t) / 2


def _validate_order(order: Sequence[int]) -> Order:
    order = tuple(order)
    if sorted(order) != [1, 2, 3, 4]:
        raise ValueError(f"(p, r, t, u) must be a permutation of 1..4, got {order}")
    return order


def valid_orders(rep: RepId) -> List[Order]:
    """One order per distinct instance of ``rep``."""
    depth = _ORDER_DEPTH[rep]
    seen, orders = set(), []
    for order in itertools.permutations(DEFAULT_ORDER):
        if order[:depth] not in seen:
            seen.add(order[:depth])
            orders.append(order)
    return orders


def _poch(up=(), down=(), length=N) -> Tuple[PochFactor, ...]:
    return tuple(PochFactor(m, length, 1) for m in up) + tuple(PochFactor(m, length, -1) for m in down)


def aw_expression(rep: RepId, order: Sequence[int] = DEFAULT_ORDER) -> Expression:
    """
    Symbolic form of ``p_n(x; a | q)`` given by representation ``rep`` with
    indices ``(p, r, t, u)``, in the AW frame where ``t`` stands for
    ``exp(i theta)``.
    """
    p, r, tt, u = (var(f"a{k}") for k in _validate_order(order))
    rest = [r, tt, u]
    t = var("t")
    big_a = product(var(f"a{k}") for k in range(1, 5))
    qn, q1n = Q_MINUS_N, q_power(1, -1)

    if rep is RepId.D1:
        return Expression(
            PhiSpec((qn, q_power(-1, 1) * big_a, p * t, p / t), tuple(p * s for s in rest)),
            Prefactor(power_base=p.inverse(), poch_factors=_poch(up=[p * s for s in rest])),
        )
    if rep is RepId.D2:
        return Expression(
            PhiSpec(
                (qn,) + tuple(q1n / (p * s) for s in rest),
                (q_power(2, -2) / big_a, q1n * t / p, q1n / (t * p)),
            ),
            Prefactor(
                -1,
                1,
                p.inverse(),
                _poch(up=[big_a / Q], length=TWO_N) + _poch(up=[p * t, p / t], down=[big_a / Q]),
            ),
        )
    if rep is RepId.D3:
        return Expression(
            PhiSpec((qn, p * t, r * t, q1n / (tt * u)), (p * r, q1n * t / tt, q1n * t / u)),
            Prefactor(power_base=t, poch_factors=_poch(up=[p * r, tt / t, u / t])),
        )
    if rep is RepId.D4:
        a_all = [p, r, tt, u]
        return Expression(
            WSpec(qn * t**2, (qn,) + tuple(s * t for s in a_all), q_power(2, -1) / big_a),
            Prefactor(power_base=t, poch_factors=_poch(up=[s / t for s in a_all], down=[t**-2])),
        )
    if rep is RepId.D5:
        return Expression(
            WSpec(
                q_power(1, -2) * p * t / big_a,
                (qn,) + tuple(q1n * p * s / big_a for s in rest) + (p * t,),
                Q * t / p,
            ),
            Prefactor(
                power_base=t,
                poch_factors=_poch(up=[big_a / Q], length=TWO_N)
                + _poch(up=[s / t for s in rest] + [big_a / (Q * p * t)], down=[big_a / Q])
                + _poch(down=[big_a / (Q * p * t)], length=TWO_N),
            ),
        )
    if rep is RepId.D6:
        return Expression(
            WSpec(big_a * t / (Q * p), (qn,) + tuple(s * t for s in rest) + (q_power(-1, 1) * big_a,), Q / (t * p)),
            Prefactor(
                power_base=t,
                poch_factors=_poch(up=[p / t] + [big_a / (p * s) for s in rest], down=[big_a * t / p]),
            ),
        )
    if rep is RepId.D7:
        return Expression(
            WSpec(qn * p / r, (qn, q1n / (r * tt), q1n / (r * u), p * t, p / t), q_power(0, 1) * tt * u),
            Prefactor(power_base=p.inverse(), poch_factors=_poch(up=[p * tt, p * u, r * t, r / t], down=[r / p])),
        )
    raise ValueError(f"Unknown representation {rep}")


def aw_eval_rep(rep: RepId, pt: AWPoint, order: Sequence[int] = DEFAULT_ORDER) -> Fraction:
    return aw_expression(rep, order).evaluate(pt.env())


def aw_reference(pt: AWPoint) -> Fraction:
    return aw_eval_rep(RepId.D1, pt)


def aw_guards(rep: RepId, order: Sequence[int] = DEFAULT_ORDER) -> Tuple:
    return aw_expression(rep, order).guards()


def flip(expr: Expression) -> Expression:
    """``theta -> -theta``, i.e. ``t -> 1/t``."""
    return expr.map_monomials(lambda m: m.substitute({"t": var("t", -1)}))


def same_series(left, right) -> bool:
    return series_key(left, AW.variables) == series_key(right, AW.variables)


@dataclass
class AWSymmetryReport:
    permutation_invariant: bool
    flip_invariant: Dict[RepId, bool]
    inversion_pairing: bool
    d3_self_pairing: bool

    @property
    def passed(self) -> bool:
        return (
            self.permutation_invariant
            and all(self.flip_invariant.values())
            and self.inversion_pairing
            and self.d3_self_pairing
        )


def aw_symmetry_check(pt: AWPoint) -> AWSymmetryReport:
    reference = aw_reference(pt)
    permutation_invariant = all(
        aw_reference(pt.permuted(perm)) == reference for perm in itertools.permutations(range(4))
    )
    flipped = pt.flipped()
    flip_invariant = {rep: aw_eval_rep(rep, flipped) == aw_eval_rep(rep, pt) for rep in RepId}

    d1, d2 = aw_expression(RepId.D1), aw_expression(RepId.D2)
    inverted = invert_phi(d1.series)
    inversion_pairing = same_series(inverted.series, d2.series)

    # inverting D3(p, r, t, u) gives D3(t, u, p, r) at 1/t
    p, r, tt, u = DEFAULT_ORDER
    d3 = aw_expression(RepId.D3, (p, r, tt, u))
    partner = flip(aw_expression(RepId.D3, (tt, u, p, r)))
    d3_self_pairing = same_series(invert_phi(d3.series).series, partner.series)
    return AWSymmetryReport(permutation_invariant, flip_invariant, inversion_pairing, d3_self_pairing)


def aw_degree(a: Sequence[Fraction], q: Fraction, n: int, ts: Optional[Sequence[Fraction]] = None) -> List[Fraction]:
    """
    Interpolates ``p_n`` in ``x = (t + 1/t)/2`` through ``n + 2`` points and
    returns the exact coefficients, leading first, with leading zeros removed.
    """
    ts = list(ts) if ts is not None else [Fraction(k + 2) for k in range(n + 2)]
    x = sympy.Symbol("x")
    points = []
    for t in ts:
        pt = AWPoint(n, tuple(a), t, q)
        points.append((sympy.Rational(pt.x.numerator, pt.x.denominator), _to_sympy(aw_reference(pt))))
    poly = sympy.Poly(sympy.interpolate(points, x), x, domain=sympy.QQ)
    return [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()]


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


@dataclass
class AWSweepResult:
    rep: RepId
    order: Order
    envs: int = 0
    skips: List[str] = field(default_factory=list)
    mismatches: List[str] = field(default_factory=list)
    micros: int = 0

    @property
    def passed(self) -> bool:
        return self.envs > len(self.skips) and not self.mismatches


def _instances() -> Iterator[Tuple[RepId, Order]]:
    for rep in RepId:
        for order in valid_orders(rep):
            yield rep, order


def aw_sweep(seed: int = 1, n_max: int = 6, envs_per_check: int = 25) -> List[AWSweepResult]:
    """Checks every representation, index choice and ordering against the defining one."""
    instances = [(rep, order, aw_expression(rep, order)) for rep, order in _instances()]
    guards = sorted({g for _, _, expr in instances for g in expr.guards()}, key=str)
    results = {(rep, order): AWSweepResult(rep, order) for rep, order, _ in instances}
    s = next_seed(seed)
    logger.info(f"Sweeping {len(instances)} representation instances over {envs_per_check} points")
    for i in range(envs_per_check):
        env = sample_point(AW, i % (n_max + 1), s, guards)
        s = next_seed(s)
        try:
            reference = aw_reference(AWPoint.from_env(env))
        except EvaluationError as e:
            logger.debug(f"Skipping point {env}: {e}")
            for result in results.values():
                result.envs += 1
                result.skips.append(f"{env.fingerprint}: {e}")
            continue
        for rep, order, expr in instances:
            result = results[(rep, order)]
            result.envs += 1
            start = time.perf_counter_ns()
            try:
                value = expr.evaluate(env)
            except EvaluationError as e:
                logger.debug(f"Skipping {rep.value}{order} at {env}: {e}")
                result.skips.append(f"{env.fingerprint}: {e}")
                continue
            finally:
                result.micros += (time.perf_counter_ns() - start) // 1000
            if value != reference:
                result.mismatches.append(env.fingerprint)
    return list(results.values())
