# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import functools
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from qaw_verify.errors import ConstraintViolated, EvaluationError, NoTerminatingSlot, OddParity
from qaw_verify.field import Q, Q_MINUS_N, ParamMonomial, next_seed, product, q_power, sample_point
from qaw_verify.series import Expression, PhiSpec, PochFactor, Prefactor, WSpec
from qaw_verify.symmetry.signature import (
    CONVERSE_CLASSES,
    W_CLASSES,
    ClassId,
    Classifier,
    converse_classifier,
    expression_classifier,
)
from qaw_verify.symmetry.union_find import association_blocks

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
S6_ORDER = 720
WD5_ORDER = 1920

Census = Dict[Hashable, int]

REFERENCE_S6: Census = {ClassId.C3: 216, ClassId.C4: 216, ClassId.C5: 144, ClassId.C6B: 144}

_W0_ROW = {ClassId.W0: 120, ClassId.W6: 480}
_W1_ROW = {ClassId.W1: 120, ClassId.W7B: 480}
# W2 has three times as many distinct relabeled forms as W7 or W7c
_W2_ROW = {ClassId.W2: 360, ClassId.W7: 120, ClassId.W7C: 120}
REFERENCE_WD5: Dict[ClassId, Census] = {
    ClassId.W0: _W0_ROW,
    ClassId.W6: _W0_ROW,
    ClassId.W1: _W1_ROW,
    ClassId.W7B: _W1_ROW,
    ClassId.W2: _W2_ROW,
    ClassId.W7: _W2_ROW,
    ClassId.W7C: _W2_ROW,
}

# the long-standing tabulation of this census lists W2:120 and W7:360 for the W2 block
_W2_TABULATED = {ClassId.W2: 120, ClassId.W7: 360, ClassId.W7C: 120}
TABULATED_WD5: Dict[ClassId, Census] = {
    **REFERENCE_WD5,
    ClassId.W2: _W2_TABULATED,
    ClassId.W7: _W2_TABULATED,
    ClassId.W7C: _W2_TABULATED,
}

_CW1_ROW = {ClassId.CW1: 360, ClassId.CW4: 240}
_CW2_ROW = {ClassId.CW2: 360, ClassId.CW3: 240}
REFERENCE_CONVERSE: Dict[ClassId, Census] = {
    ClassId.CW1: _CW1_ROW,
    ClassId.CW4: _CW1_ROW,
    ClassId.CW2: _CW2_ROW,
    ClassId.CW3: _CW2_ROW,
}


def terminating_counts(row: Mapping[Hashable, int]) -> Census:
    return {label: count for label, count in row.items() if label is not ClassId.NONTERMINATING and count}


def _base_expression(classifier: Classifier, label: Hashable) -> Expression:
    template = classifier.templates[label]
    return Expression(template.series, template.to_base)


def _value_mismatches(
    base: Expression,
    candidate: Expression,
    classifier: Classifier,
    seed: int,
    envs: int,
    n_max: int,
    square: bool,
) -> List[str]:
    guards = base.guards() + candidate.guards()
    mismatches = []
    s = next_seed(seed)
    for i in range(envs):
        env = sample_point(classifier.frame, i % (n_max + 1), s, guards, square=square)
        s = next_seed(s)
        try:
            if base.evaluate(env) != candidate.evaluate(env):
                mismatches.append(env.fingerprint)
        except EvaluationError as e:
            logger.debug(f"Skipping value check at {env}: {e}")
    return mismatches


# S6 acting on balanced 4phi3


@dataclass(frozen=True)
class X6Config:
    """Six monomials ``x1..x6`` with ``x1 x2 x3 x4 x5 x6 = q^(1-n)``."""

    x: Tuple[ParamMonomial, ...]

    def __post_init__(self):
        x = tuple(self.x)
        if len(x) != 6:
            raise ValueError(f"Expected six parameters, got {len(x)}")
        total = product(x)
        if total != q_power(1, -1):
            raise ConstraintViolated(f"x1...x6 = {total}, expected q^(1-n)")
        object.__setattr__(self, "x", x)

    @classmethod
    def from_balanced(cls, phi: PhiSpec) -> "X6Config":
        """Reads ``phi(q^-n, x23, x13, x12; x1234, x1235, x1236; q, q)``."""
        x23, x13, x12 = (m for i, m in enumerate(phi.upper) if i != phi.terminating_index)
        x1234, x1235, x1236 = phi.lower
        big_x = (x12 * x13 * x23) ** HALF
        return cls((big_x / x23, big_x / x13, big_x / x12, x1234 / big_x, x1235 / big_x, x1236 / big_x))

    @classmethod
    def standard(cls) -> "X6Config":
        return cls.from_balanced(expression_classifier().templates[ClassId.C3].series)


def s6_expression(config: X6Config) -> Expression:
    """
    ``q^binom(n, 2) (x1234, x1235, x1236; q)_n / x123^n *
    4phi3(q^-n, x23, x13, x12; x1234, x1235, x1236; q, q)``, symmetric in ``x``.
    """
    x1, x2, x3, x4, x5, x6 = config.x
    x123 = x1 * x2 * x3
    lower = (x123 * x4, x123 * x5, x123 * x6)
    series = PhiSpec((Q_MINUS_N, x2 * x3, x1 * x3, x1 * x2), lower)
    return Expression(series, Prefactor(1, 0, x123.inverse(), tuple(PochFactor(m) for m in lower)))


def _validate_perm(g: Sequence[int], size: int) -> Tuple[int, ...]:
    g = tuple(g)
    if sorted(g) != list(range(size)):
        raise ValueError(f"Expected a permutation of 0..{size - 1}, got {g}")
    return g


def s6_apply(g: Sequence[int], base: X6Config) -> Expression:
    g = _validate_perm(g, 6)
    return s6_expression(X6Config(tuple(base.x[i] for i in g)))


def s6_elements() -> Iterator[Tuple[int, ...]]:
    return itertools.permutations(range(6))


def s6_arrangements(base: Optional[X6Config] = None) -> int:
    """Number of distinct labeled slot arrangements ``(upper, lower)`` over the whole group."""
    base = X6Config.standard() if base is None else base
    arrangements = set()
    for g in s6_elements():
        series = s6_apply(g, base).series
        arrangements.add((series.upper, series.lower))
    return len(arrangements)


def s6_census(base: Optional[X6Config] = None, classifier: Optional[Classifier] = None) -> Census:
    base = X6Config.standard() if base is None else base
    classifier = expression_classifier() if classifier is None else classifier
    counts = Counter(classifier.classify(s6_apply(g, base)) for g in s6_elements())
    logger.info(f"S6 census: {dict(counts)}")
    return dict(counts)


def s6_value_check(
    elements: Sequence[Sequence[int]],
    base: Optional[X6Config] = None,
    seed: int = 1,
    envs: int = 10,
    n_max: int = 4,
) -> Dict[Tuple[int, ...], List[str]]:
    """Returns the envs at which an image differs from the base, per element."""
    base = X6Config.standard() if base is None else base
    reference = s6_apply(range(6), base)
    failures = {}
    for g in elements:
        mismatches = _value_mismatches(
            reference, s6_apply(g, base), expression_classifier(), seed, envs, n_max, square=True
        )
        if mismatches:
            failures[tuple(g)] = mismatches
    return failures


# WD5 acting on terminating very-well-poised 8W7


@dataclass(frozen=True)
class SignedPerm:
    """``x_k -> x_perm[k] ** (-1 if signs[k] else 1)``."""

    perm: Tuple[int, ...]
    signs: Tuple[int, ...] = (0, 0, 0, 0, 0)

    def __post_init__(self):
        object.__setattr__(self, "perm", _validate_perm(self.perm, 5))
        signs = tuple(self.signs)
        if len(signs) != 5 or any(s not in (0, 1) for s in signs):
            raise ValueError(f"Expected five sign bits, got {signs}")
        object.__setattr__(self, "signs", signs)

    @property
    def parity(self) -> int:
        return sum(self.signs)

    def apply(self, x: Sequence[ParamMonomial]) -> Tuple[ParamMonomial, ...]:
        return tuple(x[i].inverse() if s else x[i] for i, s in zip(self.perm, self.signs))


IDENTITY = SignedPerm((0, 1, 2, 3, 4))


def wd5_elements(even: bool = True) -> Iterator[SignedPerm]:
    for perm in itertools.permutations(range(5)):
        for signs in itertools.product((0, 1), repeat=5):
            if not even or sum(signs) % 2 == 0:
                yield SignedPerm(perm, signs)


@dataclass(frozen=True)
class WConfig:
    """
    ``x0`` and ``x1..x5`` of a very-well-poised 8W7 with special parameter
    ``b`` and numerator parameters ``a1..a5``: with ``P^2 = a1...a5/(q b)``,
    ``x0^2 = q b/P`` and ``xk^2 = P/ak``.
    """

    x0: ParamMonomial
    x: Tuple[ParamMonomial, ...]

    @classmethod
    def from_w(cls, w: WSpec) -> "WConfig":
        if len(w.numer) != 5:
            raise ValueError(f"{w} is not an 8W7")
        p = (product(w.numer) / (Q * w.special)) ** HALF
        x0 = (Q * w.special / p) ** HALF
        return cls(x0, tuple((p / a) ** HALF for a in w.numer))

    def w_spec(self, x: Optional[Sequence[ParamMonomial]] = None) -> WSpec:
        x = self.x if x is None else tuple(x)
        px = product(x)
        special = self.x0**3 * px / Q
        numer = tuple(self.x0 * px / xk**2 for xk in x)
        return WSpec(special, numer, (Q * special) ** 2 / product(numer))


def wd5_apply(g: SignedPerm, base: WConfig) -> Union[Expression, ClassId]:
    if g.parity % 2:
        raise OddParity(f"{g} has an odd number of inversions")
    w = base.w_spec(g.apply(base.x))
    try:
        w.terminating_index
    except NoTerminatingSlot:
        return ClassId.NONTERMINATING
    return Expression(w)


def _w_base(classifier: Classifier, label: Hashable) -> WConfig:
    series = classifier.templates[label].series
    return WConfig.from_w(series.map_monomials(classifier.frame.reduce))


def _wd5_row(classifier: Classifier, label: Hashable) -> Census:
    base = _w_base(classifier, label)
    counts = Counter()
    for g in wd5_elements():
        image = wd5_apply(g, base)
        counts[image if image is ClassId.NONTERMINATING else classifier.classify(image)] += 1
    return dict(counts)


@functools.lru_cache(maxsize=None)
def wd5_census(base_class: ClassId) -> Census:
    if base_class not in W_CLASSES:
        raise ValueError(f"Unknown W class {base_class}")
    row = _wd5_row(expression_classifier(), base_class)
    logger.info(f"WD5 census from {base_class.value}: {row}")
    return row


@functools.lru_cache(maxsize=None)
def converse_census() -> Dict[ClassId, Census]:
    classifier = converse_classifier()
    rows = {label: _wd5_row(classifier, label) for label in CONVERSE_CLASSES}
    logger.info(f"Converse census: {rows}")
    return rows


def wd5_rows() -> Dict[ClassId, Census]:
    return {label: wd5_census(label) for label in W_CLASSES}


def wd5_value_check(
    base_class: ClassId,
    classifier: Optional[Classifier] = None,
    elements: Optional[Sequence[SignedPerm]] = None,
    seed: int = 1,
    envs: int = 10,
    n_max: int = 4,
) -> Dict[SignedPerm, List[str]]:
    """
    Compares every terminating image ``Y`` of class ``C`` under relabeling
    ``rho`` with the base through ``P_base T_base == P_C(rho) Y``.
    """
    classifier = expression_classifier() if classifier is None else classifier
    base = _w_base(classifier, base_class)
    reference = _base_expression(classifier, base_class)
    failures = {}
    for g in wd5_elements() if elements is None else elements:
        image = wd5_apply(g, base)
        if image is ClassId.NONTERMINATING:
            continue
        hit = classifier.match(image.series)
        if hit is None:
            failures[g] = ["unclassified"]
            continue
        candidate = image.scaled(classifier.to_base(*hit))
        mismatches = _value_mismatches(
            reference, candidate, classifier, seed, envs, n_max, square=candidate.needs_roots
        )
        if mismatches:
            failures[g] = mismatches
    return failures


def compare_rows(
    rows: Mapping[Hashable, Mapping[Hashable, int]],
    reference: Mapping[Hashable, Census],
    level: int = logging.WARNING,
) -> List[str]:
    deltas = []
    for source, expected in reference.items():
        found = terminating_counts(rows.get(source, {}))
        if found != dict(expected):
            deltas.append(f"{source.value}: expected {_plain(expected)}, found {_plain(found)}")
    for delta in deltas:
        logger.log(level, f"Census mismatch {delta}")
    return deltas


def _plain(row: Mapping[Hashable, int]) -> Dict[str, int]:
    return {label.value: count for label, count in row.items()}


def blocks(rows: Mapping[Hashable, Mapping[Hashable, int]]) -> List[Tuple[Hashable, ...]]:
    return association_blocks({source: terminating_counts(row) for source, row in rows.items()})


__all__ = [
    "REFERENCE_CONVERSE",
    "REFERENCE_S6",
    "REFERENCE_WD5",
    "SignedPerm",
    "TABULATED_WD5",
    "WConfig",
    "X6Config",
    "blocks",
    "compare_rows",
    "converse_census",
    "s6_apply",
    "s6_arrangements",
    "s6_census",
    "s6_elements",
    "s6_expression",
    "s6_value_check",
    "terminating_counts",
    "wd5_apply",
    "wd5_census",
    "wd5_elements",
    "wd5_rows",
    "wd5_value_check",
]
