# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, Tuple, Union

from qaw_verify.errors import DivergentDenominator, NoTerminatingSlot, SpecialPointB, ZeroBase
from qaw_verify.field import ONE, Q, Q_MINUS_N, ParamMonomial, PointEnv, eval_monomial

logger = logging.getLogger(__name__)

MonomialMap = Callable[[ParamMonomial], ParamMonomial]


@dataclass(frozen=True)
class PochLength:
    """Length ``fixed + per_n * n`` of a q-Pochhammer symbol."""

    fixed: int = 0
    per_n: int = 0

    @classmethod
    def of(cls, k: int) -> "PochLength":
        return cls(k, 0)

    def resolve(self, n: int) -> int:
        length = self.fixed + self.per_n * n
        if length < 0:
            raise ValueError(f"Pochhammer length {self} is negative at n={n}")
        return length

    def __str__(self) -> str:
        if self.per_n == 0:
            return str(self.fixed)
        text = "n" if self.per_n == 1 else f"{self.per_n}n"
        if self.fixed:
            text += f"{self.fixed:+d}"
        return text


N = PochLength(0, 1)
TWO_N = PochLength(0, 2)


def q_pochhammer(a: Fraction, q: Fraction, k: int) -> Fraction:
    if k < 0:
        raise ValueError(f"Pochhammer length must be nonnegative, got {k}")
    a, q = Fraction(a), Fraction(q)
    result, power = Fraction(1), Fraction(1)
    for _ in range(k):
        result *= 1 - a * power
        power *= q
    return result


def poch_base_invert(a: Fraction, q: Fraction, k: int) -> Fraction:
    """
    ``(a; q^-1)_k`` computed as ``(1/a; q)_k (-a)^k q^-binom(k, 2)``.
    """
    a, q = Fraction(a), Fraction(q)
    if a == 0:
        raise ZeroBase("Base inversion needs a nonzero base")
    return q_pochhammer(1 / a, q, k) * (-a) ** k * q ** (-(k * (k - 1) // 2))


def vanishing_length(a: Fraction, q: Fraction, k: int) -> Optional[int]:
    """Smallest ``j <= k`` with ``(a; q)_j == 0``, or None."""
    power = Fraction(1)
    for j in range(k):
        if a * power == 1:
            return j + 1
        power *= q
    return None


@dataclass(frozen=True)
class PhiSpec:
    """
    A terminating basic hypergeometric series with ``zero_pad`` extra zero
    parameters (positive: lower, negative: upper).
    """

    upper: Tuple[ParamMonomial, ...]
    lower: Tuple[ParamMonomial, ...]
    argument: ParamMonomial = Q
    zero_pad: int = 0

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))

    @property
    def terminating_index(self) -> int:
        try:
            return self.upper.index(Q_MINUS_N)
        except ValueError as e:
            raise NoTerminatingSlot(f"No upper parameter of {self} equals q^-n") from e

    @property
    def excess(self) -> int:
        """Power of ``(-1)^k q^binom(k, 2)`` in the k-th term, counted after zero padding."""
        r = len(self.upper) + max(0, -self.zero_pad)
        s = len(self.lower) + max(0, self.zero_pad)
        return 1 + s - r

    def monomials(self) -> Iterator[ParamMonomial]:
        yield from self.upper
        yield from self.lower
        yield self.argument

    def map_monomials(self, fn: MonomialMap) -> "PhiSpec":
        return PhiSpec(tuple(map(fn, self.upper)), tuple(map(fn, self.lower)), fn(self.argument), self.zero_pad)

    def guards(self) -> Tuple[ParamMonomial, ...]:
        return self.lower

    def evaluate(self, env: PointEnv) -> Fraction:
        return eval_phi(self, env)

    def __str__(self) -> str:
        pad = f", pad={self.zero_pad}" if self.zero_pad else ""
        upper = ", ".join(map(str, self.upper))
        lower = ", ".join(map(str, self.lower))
        return f"{len(self.upper)}phi{len(self.lower)}({upper}; {lower}; {self.argument}{pad})"


@dataclass(frozen=True)
class WSpec:
    """
    A terminating very-well-poised series ``W(special; numer; argument)``.

    Five numerator parameters give the 8W7; other arities follow the same
    term formula.
    """

    special: ParamMonomial
    numer: Tuple[ParamMonomial, ...]
    argument: ParamMonomial

    def __post_init__(self):
        object.__setattr__(self, "numer", tuple(self.numer))

    @property
    def terminating_index(self) -> int:
        try:
            return self.numer.index(Q_MINUS_N)
        except ValueError as e:
            raise NoTerminatingSlot(f"No numerator parameter of {self} equals q^-n") from e

    def denominators(self) -> Tuple[ParamMonomial, ...]:
        return tuple(Q * self.special / a for a in self.numer)

    def monomials(self) -> Iterator[ParamMonomial]:
        yield self.special
        yield from self.numer
        yield self.argument

    def map_monomials(self, fn: MonomialMap) -> "WSpec":
        return WSpec(fn(self.special), tuple(map(fn, self.numer)), fn(self.argument))

    def guards(self) -> Tuple[ParamMonomial, ...]:
        return (self.special,) + self.denominators()

    def expand(self) -> PhiSpec:
        """The literal very-well-poised series with ``+-q sqrt(b)`` and ``+-sqrt(b)`` entries."""
        root = self.special ** Fraction(1, 2)
        return PhiSpec(
            (self.special, Q * root, -(Q * root)) + self.numer,
            (root, -root) + self.denominators(),
            self.argument,
        )

    def evaluate(self, env: PointEnv) -> Fraction:
        return eval_w(self, env)

    def __str__(self) -> str:
        numer = ", ".join(map(str, self.numer))
        return f"{len(self.numer) + 3}W{len(self.numer) + 2}({self.special}; {numer}; {self.argument})"


SeriesSpec = Union[PhiSpec, WSpec]


def _terminating_sum(
    upper: Sequence[Fraction],
    lower: Sequence[Fraction],
    lower_names: Sequence[str],
    z: Fraction,
    q: Fraction,
    n: int,
    excess: int,
) -> Fraction:
    total = term = Fraction(1)
    power = Fraction(1)
    for k in range(n):
        numer = Fraction(1)
        for a in upper:
            numer *= 1 - a * power
        denom = 1 - q * power
        for b, name in zip(lower, lower_names):
            factor = 1 - b * power
            if factor == 0:
                raise DivergentDenominator(name, k + 1)
            denom *= factor
        term = term * numer / denom * z * (-power) ** excess
        total += term
        power *= q
    return total


def eval_phi(spec: PhiSpec, env: PointEnv) -> Fraction:
    spec.terminating_index  # raises NoTerminatingSlot
    return _terminating_sum(
        [eval_monomial(m, env) for m in spec.upper],
        [eval_monomial(m, env) for m in spec.lower],
        [str(m) for m in spec.lower],
        eval_monomial(spec.argument, env),
        env.q,
        env.n,
        spec.excess,
    )


def eval_w(spec: WSpec, env: PointEnv) -> Fraction:
    """
    Sums ``(1 - b q^2k)/(1 - b) (b, a_1, ...; q)_k / (q, qb/a_1, ...; q)_k z^k``
    for ``k = 0..n``, keeping all arithmetic rational.
    """
    spec.terminating_index  # raises NoTerminatingSlot
    q, n = env.q, env.n
    b = eval_monomial(spec.special, env)
    inverse_q2, forbidden = 1 / (q * q), Fraction(1)
    for k in range(n + 1):
        if b == forbidden:
            raise SpecialPointB(f"Special parameter {spec.special} equals q^-{2 * k}")
        forbidden *= inverse_q2
    numer = [eval_monomial(a, env) for a in spec.numer]
    lower = [q * b / a for a in numer]
    lower_names = [str(m) for m in spec.denominators()]
    z = eval_monomial(spec.argument, env)

    total = coeff = Fraction(1)
    power = Fraction(1)
    for k in range(n):
        top = 1 - b * power
        for a in numer:
            top *= 1 - a * power
        bottom = 1 - q * power
        for c, name in zip(lower, lower_names):
            factor = 1 - c * power
            if factor == 0:
                raise DivergentDenominator(name, k + 1)
            bottom *= factor
        coeff = coeff * top / bottom * z
        power *= q
        total += coeff * (1 - b * power * power) / (1 - b)
    return total


def eval_series(series: SeriesSpec, env: PointEnv) -> Fraction:
    return series.evaluate(env)


def balance_level(spec: PhiSpec) -> Optional[int]:
    """
    Returns ``l`` with ``q^l * prod(upper) == prod(lower)`` as monomials, or None.

    Zero-padded specs carry no balance level.
    """
    if spec.zero_pad:
        return None
    ratio = ONE
    for m in spec.lower:
        ratio = ratio * m
    for m in spec.upper:
        ratio = ratio / m
    if ratio.sign != 1 or ratio.n_coeff != 0 or ratio.var_exps or isinstance(ratio.q_exp, Fraction):
        return None
    return ratio.q_exp


def is_very_well_poised(spec: PhiSpec) -> bool:
    if spec.zero_pad or len(spec.upper) != len(spec.lower) + 1 or len(spec.upper) < 3:
        return False
    head, rest = spec.upper[0], spec.upper[1:]
    if Counter(Q * head / u for u in rest) != Counter(spec.lower):
        return False
    rest_set = set(rest)
    return any(-u in rest_set and u * u == Q * Q * head for u in rest)


def series_key(series: SeriesSpec, variables: Sequence[str]) -> tuple:
    """Order-free encoding of a series, comparing parameter multisets."""

    def encode(m: ParamMonomial) -> tuple:
        return m.encode(variables)

    if isinstance(series, WSpec):
        return ("w", encode(series.special), tuple(sorted(map(encode, series.numer))), encode(series.argument))
    return (
        "phi",
        series.zero_pad,
        tuple(sorted(map(encode, series.upper))),
        tuple(sorted(map(encode, series.lower))),
        encode(series.argument),
    )
