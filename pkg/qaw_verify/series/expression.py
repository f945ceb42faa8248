# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Tuple

from qaw_verify.errors import DivergentDenominator
from qaw_verify.field import ONE, Frame, ParamMonomial, PointEnv, eval_monomial
from qaw_verify.series.kernel import N, MonomialMap, PochLength, SeriesSpec, q_pochhammer, vanishing_length


@dataclass(frozen=True)
class PochFactor:
    base: ParamMonomial
    length: PochLength = N
    exponent: int = 1

    def __str__(self) -> str:
        text = f"({self.base};q)_{self.length}"
        return text if self.exponent == 1 else f"{text}^{self.exponent}"


@dataclass(frozen=True)
class Prefactor:
    """
    ``q^(qbinom_exp * binom(n, 2)) (-1)^(sign_exp * n) power_base^n`` times a
    product of q-Pochhammer symbols raised to their exponents.
    """

    qbinom_exp: int = 0
    sign_exp: int = 0
    power_base: ParamMonomial = ONE
    poch_factors: Tuple[PochFactor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "poch_factors", tuple(self.poch_factors))

    def evaluate(self, env: PointEnv) -> Fraction:
        q, n = env.q, env.n
        value = q ** (self.qbinom_exp * (n * (n - 1) // 2))
        if (self.sign_exp * n) % 2:
            value = -value
        value *= eval_monomial(self.power_base, env) ** n
        for factor in self.poch_factors:
            base = eval_monomial(factor.base, env)
            length = factor.length.resolve(n)
            poch = q_pochhammer(base, q, length)
            if factor.exponent >= 0:
                value *= poch**factor.exponent
            elif poch == 0:
                raise DivergentDenominator(str(factor.base), vanishing_length(base, q, length))
            else:
                value /= poch**-factor.exponent
        return value

    def __mul__(self, other: "Prefactor") -> "Prefactor":
        if not isinstance(other, Prefactor):
            return NotImplemented
        return Prefactor(
            self.qbinom_exp + other.qbinom_exp,
            self.sign_exp + other.sign_exp,
            self.power_base * other.power_base,
            self.poch_factors + other.poch_factors,
        )

    def inverse(self) -> "Prefactor":
        return Prefactor(
            -self.qbinom_exp,
            -self.sign_exp,
            self.power_base.inverse(),
            tuple(PochFactor(f.base, f.length, -f.exponent) for f in self.poch_factors),
        )

    def __truediv__(self, other: "Prefactor") -> "Prefactor":
        if not isinstance(other, Prefactor):
            return NotImplemented
        return self * other.inverse()

    def simplify(self) -> "Prefactor":
        """Cancels Pochhammer symbols with equal base and length."""
        exps = OrderedDict()
        for f in self.poch_factors:
            key = (f.base, f.length)
            exps[key] = exps.get(key, 0) + f.exponent
        factors = tuple(PochFactor(base, length, exp) for (base, length), exp in exps.items() if exp != 0)
        return Prefactor(self.qbinom_exp, self.sign_exp % 2, self.power_base, factors)

    def monomials(self) -> Iterator[ParamMonomial]:
        yield self.power_base
        for f in self.poch_factors:
            yield f.base

    def map_monomials(self, fn: MonomialMap) -> "Prefactor":
        return Prefactor(
            self.qbinom_exp,
            self.sign_exp,
            fn(self.power_base),
            tuple(PochFactor(fn(f.base), f.length, f.exponent) for f in self.poch_factors),
        )

    def relabel(self, mapping: Mapping[str, str]) -> "Prefactor":
        return self.map_monomials(lambda m: m.relabel(mapping))

    def guards(self) -> Tuple[ParamMonomial, ...]:
        return tuple(f.base for f in self.poch_factors)

    @property
    def is_identity(self) -> bool:
        return self.qbinom_exp == 0 and self.sign_exp % 2 == 0 and self.power_base == ONE and not self.poch_factors

    def __str__(self) -> str:
        parts = []
        if self.qbinom_exp:
            parts.append(f"q^({self.qbinom_exp} binom(n,2))")
        if self.sign_exp % 2:
            parts.append("(-1)^n")
        if self.power_base != ONE:
            parts.append(f"({self.power_base})^n")
        parts.extend(map(str, self.poch_factors))
        return " ".join(parts) or "1"


@dataclass(frozen=True)
class Expression:
    series: SeriesSpec
    prefactor: Prefactor = field(default_factory=Prefactor)

    def evaluate(self, env: PointEnv) -> Fraction:
        return self.prefactor.evaluate(env) * self.series.evaluate(env)

    def monomials(self) -> Iterator[ParamMonomial]:
        yield from self.prefactor.monomials()
        yield from self.series.monomials()

    def map_monomials(self, fn: MonomialMap) -> "Expression":
        return Expression(self.series.map_monomials(fn), self.prefactor.map_monomials(fn))

    def relabel(self, mapping: Mapping[str, str]) -> "Expression":
        return self.map_monomials(lambda m: m.relabel(mapping))

    def reduce(self, frame: Frame) -> "Expression":
        return self.map_monomials(frame.reduce)

    def scaled(self, prefactor: Prefactor) -> "Expression":
        return Expression(self.series, (prefactor * self.prefactor).simplify())

    def guards(self) -> Tuple[ParamMonomial, ...]:
        return self.prefactor.guards() + self.series.guards()

    @property
    def needs_roots(self) -> bool:
        return not all(m.is_integral for m in self.monomials())

    def __str__(self) -> str:
        return f"{self.prefactor} * {self.series}"
