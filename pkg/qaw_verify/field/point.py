# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Mapping, Tuple, Union

from qaw_verify.errors import IrrationalValue
from qaw_verify.field.monomial import Exponent, ParamMonomial

RationalLike = Union[int, str, Fraction]


@dataclass(frozen=True)
class PointEnv:
    q: Fraction
    n: int
    assignments: Tuple[Tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        q = Fraction(self.q)
        if q in (0, 1, -1):
            raise ValueError(f"q must avoid 0 and +-1, got {q}")
        if self.n < 0:
            raise ValueError(f"n must be nonnegative, got {self.n}")
        items = self.assignments.items() if isinstance(self.assignments, Mapping) else self.assignments
        values = tuple(sorted((name, Fraction(value)) for name, value in items))
        for name, value in values:
            if value == 0:
                raise ValueError(f"Frame variable {name} must be nonzero")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "assignments", values)

    @classmethod
    def of(cls, q: RationalLike, n: int, **values: RationalLike) -> "PointEnv":
        return cls(Fraction(q), n, values)

    @cached_property
    def values(self) -> Dict[str, Fraction]:
        return dict(self.assignments)

    def value(self, name: str) -> Fraction:
        try:
            return self.values[name]
        except KeyError as e:
            raise ValueError(f"Frame variable {name} is not bound at this point") from e

    def with_values(self, **values: RationalLike) -> "PointEnv":
        merged = dict(self.values)
        merged.update(values)
        return PointEnv(self.q, self.n, merged)

    @property
    def fingerprint(self) -> str:
        payload = repr((str(self.q), self.n, tuple((k, str(v)) for k, v in self.assignments)))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __str__(self) -> str:
        bound = ", ".join(f"{k}={v}" for k, v in self.assignments)
        return f"q={self.q}, n={self.n}" + (f", {bound}" if bound else "")


def _exact_root(value: Fraction, degree: int) -> Fraction:
    while degree > 1:
        if degree % 2:
            raise IrrationalValue(f"Only square-root towers are supported, got a root of degree {degree}")
        if value < 0:
            raise IrrationalValue(f"{value} has no real square root")
        num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if num * num != value.numerator or den * den != value.denominator:
            raise IrrationalValue(f"{value} is not the square of a rational")
        value = Fraction(num, den)
        degree //= 2
    return value


def exact_power(base: Fraction, exponent: Exponent) -> Fraction:
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base**exponent.numerator
    return _exact_root(base, exponent.denominator) ** exponent.numerator


def eval_monomial(m: ParamMonomial, env: PointEnv) -> Fraction:
    value = Fraction(m.sign) * exact_power(env.q, m.q_exp + m.n_coeff * env.n)
    for name, exp in m.var_exps:
        value *= exact_power(env.value(name), exp)
    return value
