# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import logging
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from qaw_verify.errors import SamplingExhausted
from qaw_verify.field.frames import Frame
from qaw_verify.field.monomial import ParamMonomial
from qaw_verify.field.point import PointEnv, eval_monomial

logger = logging.getLogger(__name__)

MAX_MAGNITUDE = 32
MAX_ROOT = 5


def next_seed(seed: int, adv: int = 0xF) -> int:
    """
    This is a naive helper function to generate a new seed from the given seed.
    """
    generator = np.random.default_rng(seed)
    return int(generator.integers(0, np.iinfo(np.int64).max, size=adv)[-1])


def split_seed(seed: int) -> tuple[int, int]:
    generator = np.random.default_rng(seed)
    first, second = generator.integers(0, np.iinfo(np.int64).max, size=2)
    return int(first), int(second)


def is_admissible(value: Fraction, env: PointEnv, span: Optional[int] = None) -> bool:
    """
    True iff ``value`` is nonzero and avoids ``{q^-k : 0 <= k < span}``.

    The default span ``2n + 1`` covers Pochhammer lengths up to ``2n`` and the
    ``b != q^-2k`` condition of very-well-poised series.
    """
    if value == 0:
        return False
    span = 2 * env.n + 1 if span is None else span
    inverse_q = 1 / env.q
    forbidden = Fraction(1)
    for _ in range(span):
        if value == forbidden:
            return False
        forbidden *= inverse_q
    return True


def _draw_q(rng: np.random.Generator, square: bool) -> Fraction:
    if square:
        den = int(rng.integers(2, MAX_ROOT + 1))
        return Fraction(int(rng.integers(1, den)), den) ** 2
    den = int(rng.integers(2, MAX_MAGNITUDE + 1))
    return Fraction(int(rng.integers(1, den)), den)


def _draw_value(rng: np.random.Generator, square: bool) -> Fraction:
    if square:
        return Fraction(int(rng.integers(1, MAX_ROOT + 1)), int(rng.integers(1, MAX_ROOT + 1))) ** 2
    sign = 1 if rng.integers(0, 2) else -1
    return Fraction(sign * int(rng.integers(1, MAX_MAGNITUDE + 1)), int(rng.integers(1, MAX_MAGNITUDE + 1)))


def sample_point(
    frame: Frame,
    n: int,
    seed: int,
    guards: Iterable[ParamMonomial] = (),
    square: bool = False,
    max_tries: int = 256,
) -> PointEnv:
    """
    Draws a point of ``frame`` at which every guard monomial is admissible.

    Free variables are small rationals, ``q`` lies in (0, 1). All frame
    variables, solved ones included, are pairwise distinct.
    With ``square=True`` every drawn value is the square of a small rational so
    monomials with half-integer exponents evaluate exactly.
    """
    # guards free of frame variables do not depend on the draw
    guards = [g for g in guards if g.var_exps]
    rng = np.random.default_rng(seed)
    for attempt in range(max_tries):
        q = _draw_q(rng, square)
        values = {name: _draw_value(rng, square) for name in frame.free_variables}
        env = frame.complete(PointEnv(q, n, values))
        if len(set(env.values.values())) < len(frame.variables):
            continue
        rejected = next((g for g in guards if not is_admissible(eval_monomial(g, env), env)), None)
        if rejected is None:
            return env
        logger.debug(f"Draw {attempt} for frame {frame} rejected by guard {rejected} at {env}")
    raise SamplingExhausted(f"No admissible point of frame {frame} at n={n} after {max_tries} draws")
