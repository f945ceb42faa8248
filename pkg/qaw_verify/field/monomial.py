# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple, Union

Exponent = Union[int, Fraction]


def normalize_exponent(value: Union[int, Fraction, str]) -> Exponent:
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def _format_linear(alpha: Exponent, beta: Exponent) -> str:
    parts = []
    if alpha != 0:
        parts.append(str(alpha))
    if beta != 0:
        text = "n" if beta == 1 else "-n" if beta == -1 else f"{beta}n"
        if parts and not text.startswith("-"):
            text = "+" + text
        parts.append(text)
    return "".join(parts) or "0"


def _format_factor(name: str, exp: Exponent) -> str:
    if exp == 1:
        return name
    if isinstance(exp, Fraction):
        return f"{name}^({exp})"
    return f"{name}^{exp}"


@dataclass(frozen=True)
class ParamMonomial:
    """
    A signed Laurent monomial ``sign * q^(q_exp + n_coeff*n) * prod(v^e)``.

    ``var_exps`` is kept as a sorted tuple of ``(variable, exponent)`` pairs with
    zero exponents removed, so equal monomials compare and hash equal. Exponents
    are integers; half and quarter exponents are allowed for the square-root
    parametrisations and are stored as ``Fraction``.
    """

    sign: int = 1
    q_exp: Exponent = 0
    n_coeff: Exponent = 0
    var_exps: Tuple[Tuple[str, Exponent], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"Monomial sign must be +1 or -1, got {self.sign}")
        items = self.var_exps.items() if isinstance(self.var_exps, Mapping) else self.var_exps
        merged = {}
        for name, exp in items:
            merged[name] = merged.get(name, 0) + Fraction(exp)
        object.__setattr__(self, "q_exp", normalize_exponent(self.q_exp))
        object.__setattr__(self, "n_coeff", normalize_exponent(self.n_coeff))
        object.__setattr__(
            self,
            "var_exps",
            tuple(sorted((name, normalize_exponent(exp)) for name, exp in merged.items() if exp != 0)),
        )

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.var_exps)

    def exponent(self, name: str) -> Exponent:
        return dict(self.var_exps).get(name, 0)

    def exponents(self) -> Iterable[Exponent]:
        yield self.q_exp
        yield self.n_coeff
        for _, exp in self.var_exps:
            yield exp

    @property
    def is_integral(self) -> bool:
        return all(not isinstance(exp, Fraction) for exp in self.exponents())

    def __mul__(self, other: "ParamMonomial") -> "ParamMonomial":
        if not isinstance(other, ParamMonomial):
            return NotImplemented
        return ParamMonomial(
            self.sign * other.sign,
            self.q_exp + other.q_exp,
            self.n_coeff + other.n_coeff,
            self.var_exps + other.var_exps,
        )

    def inverse(self) -> "ParamMonomial":
        return ParamMonomial(self.sign, -self.q_exp, -self.n_coeff, tuple((k, -v) for k, v in self.var_exps))

    def __truediv__(self, other: "ParamMonomial") -> "ParamMonomial":
        if not isinstance(other, ParamMonomial):
            return NotImplemented
        return self * other.inverse()

    def __neg__(self) -> "ParamMonomial":
        return ParamMonomial(-self.sign, self.q_exp, self.n_coeff, self.var_exps)

    def __pow__(self, power: Union[int, Fraction]) -> "ParamMonomial":
        power = Fraction(power)
        if self.sign < 0 and power.denominator != 1:
            raise ValueError(f"Cannot take a fractional power of the negative monomial {self}")
        sign = -1 if self.sign < 0 and power.numerator % 2 else 1
        return ParamMonomial(
            sign,
            self.q_exp * power,
            self.n_coeff * power,
            tuple((k, v * power) for k, v in self.var_exps),
        )

    def relabel(self, mapping: Mapping[str, str]) -> "ParamMonomial":
        return ParamMonomial(
            self.sign, self.q_exp, self.n_coeff, tuple((mapping.get(k, k), v) for k, v in self.var_exps)
        )

    def substitute(self, mapping: Mapping[str, "ParamMonomial"]) -> "ParamMonomial":
        kept = tuple((k, v) for k, v in self.var_exps if k not in mapping)
        result = ParamMonomial(self.sign, self.q_exp, self.n_coeff, kept)
        for name, exp in self.var_exps:
            if name in mapping:
                result = result * mapping[name] ** exp
        return result

    def encode(self, variables: Sequence[str]) -> tuple:
        unknown = set(self.variables) - set(variables)
        if unknown:
            raise ValueError(f"Monomial {self} uses variables {sorted(unknown)} outside {tuple(variables)}")
        exps = dict(self.var_exps)
        return (self.sign, self.q_exp, self.n_coeff, tuple(exps.get(name, 0) for name in variables))

    def __str__(self) -> str:
        numer, denom = [], []
        if self.n_coeff != 0:
            numer.append(f"q^({_format_linear(self.q_exp, self.n_coeff)})")
        elif self.q_exp > 0:
            numer.append(_format_factor("q", self.q_exp))
        elif self.q_exp < 0:
            denom.append(_format_factor("q", -self.q_exp))
        for name, exp in self.var_exps:
            if exp > 0:
                numer.append(_format_factor(name, exp))
            else:
                denom.append(_format_factor(name, -exp))
        text = " ".join(numer) or "1"
        if denom:
            text += "/" + " ".join(denom)
        return ("-" if self.sign < 0 else "") + text


ONE = ParamMonomial()
Q = ParamMonomial(q_exp=1)
Q_MINUS_N = ParamMonomial(n_coeff=-1)


def var(name: str, exp: Exponent = 1) -> ParamMonomial:
    return ParamMonomial(var_exps=((name, exp),))


def q_power(alpha: Exponent = 0, beta: Exponent = 0) -> ParamMonomial:
    return ParamMonomial(q_exp=alpha, n_coeff=beta)


def monomial(sign: int = 1, q: Exponent = 0, n: Exponent = 0, **exps: Exponent) -> ParamMonomial:
    return ParamMonomial(sign, q, n, tuple(exps.items()))


def product(monomials: Iterable[ParamMonomial]) -> ParamMonomial:
    return functools.reduce(lambda x, y: x * y, monomials, ONE)
