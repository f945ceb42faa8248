# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import logging
from typing import List, Optional, Sequence, Tuple

from qaw_verify.errors import NotBalanced, TemplateMismatch
from qaw_verify.field import ONE, Q, Q_MINUS_N, Frame, ParamMonomial, product, q_power
from qaw_verify.series.expression import Expression, PochFactor, Prefactor
from qaw_verify.series.kernel import N, TWO_N, PhiSpec, PochLength, WSpec, balance_level

logger = logging.getLogger(__name__)

Q_ONE_MINUS_N = q_power(1, -1)


def _prefactor(
    up: Sequence[ParamMonomial] = (),
    down: Sequence[ParamMonomial] = (),
    power: ParamMonomial = ONE,
    qbinom: int = 0,
    sign: int = 0,
    length: PochLength = N,
) -> Prefactor:
    factors = tuple(PochFactor(m, length, 1) for m in up) + tuple(PochFactor(m, length, -1) for m in down)
    return Prefactor(qbinom, sign, power, factors)


def _others(params: Sequence[ParamMonomial], index: int) -> List[ParamMonomial]:
    return [m for i, m in enumerate(params) if i != index]


def invert_phi(spec: PhiSpec) -> Expression:
    """
    Reverses the order of summation of a terminating series.

    Every non-terminating upper ``a`` becomes the lower ``q^(1-n)/a`` and every
    lower ``b`` the upper ``q^(1-n)/b``. The new zero padding is the excess of
    the input, so the reversal is an involution for any padding.
    """
    a = _others(spec.upper, spec.terminating_index)
    b = list(spec.lower)
    e = spec.excess
    d = len(a) - len(b) + e
    z = spec.argument
    series = PhiSpec(
        (Q_MINUS_N,) + tuple(Q_ONE_MINUS_N / m for m in b),
        tuple(Q_ONE_MINUS_N / m for m in a),
        q_power(d + 1, 1 - d) * product(b) / (product(a) * z),
        e,
    )
    return Expression(series, _prefactor(a, b, power=z / Q, qbinom=e - 1, sign=e - 1))


def invert_w(spec: WSpec) -> Expression:
    """
    Inversion of a terminating very-well-poised series with any number of
    non-terminating numerator parameters; the terminating slot keeps its position.
    """
    t = spec.terminating_index
    b = spec.special
    a = _others(spec.numer, t)
    z = spec.argument
    numer = tuple(Q_MINUS_N if i == t else q_power(0, -1) * m / b for i, m in enumerate(spec.numer))
    series = WSpec(q_power(0, -2) / b, numer, q_power(len(a), 2) * b ** len(a) / (product(a) ** 2 * z))
    prefactor = (
        _prefactor([b] + a, [q_power(1, 1) * b] + [Q * b / m for m in a], power=z / Q, qbinom=-1, sign=1)
        * _prefactor([q_power(0, 2) * b], [b], length=PochLength.of(1))
    )
    return Expression(series, prefactor)


def _reducer(frame: Optional[Frame]):
    return frame.reduce if frame is not None else (lambda m: m)


def watson_parameters(w: WSpec, frame: Optional[Frame] = None) -> Tuple[ParamMonomial, ...]:
    """Returns ``(b, c, d, e, f)`` of a Watson-type 8W7, checking its argument."""
    if len(w.numer) != 5:
        raise TemplateMismatch(f"{w} is not an 8W7")
    c, d, e, f = _others(w.numer, w.terminating_index)
    b = w.special
    reduce = _reducer(frame)
    if reduce(w.argument) != reduce(q_power(2, 1) * b**2 / (c * d * e * f)):
        raise TemplateMismatch(f"Argument of {w} is not q^(n+2) b^2/c d e f")
    return b, c, d, e, f


def watson_forms(w: WSpec, frame: Optional[Frame] = None) -> List[Expression]:
    """
    The four balanced 4phi3 expressions equal to a terminating 8W7 of Watson
    type, taking the non-terminating numerator parameters as ``c, d, e, f``.
    """
    b, c, d, e, f = watson_parameters(w, frame)
    qb = Q * b
    qn = Q_MINUS_N
    return [
        Expression(
            PhiSpec((qn, qb / (c * d), e, f), (qn * e * f / b, qb / c, qb / d)),
            _prefactor([qb, qb / (e * f)], [qb / e, qb / f]),
        ),
        Expression(
            PhiSpec((qn, qn * e / b, qn * f / b, qb / (c * d)), (qn * e * f / b, Q_ONE_MINUS_N / c, Q_ONE_MINUS_N / d)),
            _prefactor([qb / (e * f), qb, c, d], [qb / c, qb / d, qb / e, qb / f], power=qb / (c * d)),
        ),
        Expression(
            PhiSpec((qn, qb / (e * c), qb / (e * d), qb / (e * f)), (qb * qb / (c * d * e * f), Q_ONE_MINUS_N / e, qb / e)),
            _prefactor([qb * qb / (c * d * e * f), qb, e], [qb / c, qb / d, qb / f]),
        ),
        Expression(
            PhiSpec(
                (qn, q_power(-1, -1) * c * d * e * f / b**2, qn * e / b, e),
                (qn * e * c / b, qn * e * d / b, qn * e * f / b),
            ),
            _prefactor([qb / (e * c), qb / (e * d), qb / (e * f), qb], [qb / c, qb / d, qb / e, qb / f], power=e),
        ),
    ]


def converse_parameters(phi: PhiSpec, frame: Optional[Frame] = None) -> Tuple[ParamMonomial, ...]:
    """Returns ``(a, b, c, d, e, f)`` of a terminating balanced 4phi3 with argument q."""
    reduced = phi.map_monomials(_reducer(frame))
    if len(phi.upper) != 4 or len(phi.lower) != 3 or phi.zero_pad:
        raise NotBalanced(f"{phi} is not a 4phi3")
    if reduced.argument != Q or balance_level(reduced) != 1:
        raise NotBalanced(f"{phi} does not satisfy q^(1-n) abc = def with argument q")
    a, b, c = _others(phi.upper, phi.terminating_index)
    d, e, f = phi.lower
    return a, b, c, d, e, f


def watson_converse(phi: PhiSpec, frame: Optional[Frame] = None) -> List[Expression]:
    """
    The four terminating 8W7 expressions equal to a balanced 4phi3
    ``phi(q^-n, a, b, c; d, e, f; q, q)``.
    """
    a, b, c, d, e, f = converse_parameters(phi, frame)
    qn = Q_MINUS_N
    return [
        Expression(
            WSpec(qn * b * c / f, (qn, e / a, d / a, b, c), Q * a / f),
            _prefactor([f / b, f / c], [f / (b * c), f]),
        ),
        Expression(
            WSpec(qn * f / (b * c), (qn, Q_ONE_MINUS_N / d, Q_ONE_MINUS_N / e, f / b, f / c), Q * a / f),
            _prefactor([e * f / (b * c), e / a, b, c], [e * f / (a * b * c), b * c / f, e, f]),
        ),
        Expression(
            WSpec(qn * c / b, (qn, d / b, e / b, f / b, c), Q / a),
            _prefactor([d / c, e / c, f / c, b], [b / c, d, e, f], power=c),
        ),
        Expression(
            WSpec(qn * d / e, (qn, Q_ONE_MINUS_N / e, d / a, d / b, d / c), q_power(0, 1) * f),
            _prefactor([e / a, e / b, e / c], [d * e / (a * b * c), e / d, e]),
        ),
    ]


def watson_converse_equivalents(phi: PhiSpec, frame: Optional[Frame] = None) -> List[Expression]:
    """Two further 8W7 forms of the converse, not counted as separate classes."""
    a, b, c, d, e, f = converse_parameters(phi, frame)
    qn = Q_MINUS_N
    de_qa = d * e / (Q * a)
    return [
        Expression(
            WSpec(de_qa, (qn, d / a, e / a, b, c), Q * a / f),
            _prefactor([d * e / (a * b), d * e / (a * c)], [d * e / a, d * e / (a * b * c)]),
        ),
        Expression(
            WSpec(
                q_power(1, -2) * a / (d * e),
                (qn, Q_ONE_MINUS_N / d, Q_ONE_MINUS_N / e, Q_ONE_MINUS_N * a * b / (d * e), Q_ONE_MINUS_N * a * c / (d * e)),
                Q * a / f,
            ),
            _prefactor([de_qa, d / a, e / a, b, c], [d * e / (a * b * c), e, d], power=d * e / (b * c), qbinom=1, sign=1)
            * _prefactor(down=[de_qa], length=TWO_N),
        ),
    ]
