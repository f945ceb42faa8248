# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import enum
import functools
import hashlib
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, Optional, Sequence, Tuple, Union

from qaw_verify.askey_wilson import RepId, aw_expression
from qaw_verify.catalog import get_identity
from qaw_verify.field import ABCDEF, AW, BCDEF, Frame
from qaw_verify.series import Expression, Prefactor, SeriesSpec, series_key

logger = logging.getLogger(__name__)


class ClassId(str, enum.Enum):
    C3 = "cor3.5a.3"
    C4 = "cor3.5a.4"
    C5 = "cor3.5a.5"
    C6B = "cor3.5a.6b"
    W0 = "aw:def4to5"
    W1 = "cor3.5a.1"
    W2 = "cor3.5a.2"
    W7 = "cor3.5a.7"
    W7B = "cor3.5a.7b"
    W6 = "cor3.5a.6"
    W7C = "cor3.5a.7c"
    CW1 = "cWqW:1"
    CW2 = "cWqW:2"
    CW3 = "cWqW:3"
    CW4 = "cWqW:4"
    UNCLASSIFIED = "unclassified"
    NONTERMINATING = "nonterminating"


PHI_CLASSES = (ClassId.C3, ClassId.C4, ClassId.C5, ClassId.C6B)
W_CLASSES = (ClassId.W0, ClassId.W1, ClassId.W2, ClassId.W7, ClassId.W7B, ClassId.W6, ClassId.W7C)
EXPRESSION_CLASSES = PHI_CLASSES + W_CLASSES
CONVERSE_CLASSES = (ClassId.CW1, ClassId.CW2, ClassId.CW3, ClassId.CW4)

# (identity id, side) whose series is the class template
_TEMPLATE_SOURCES = {
    ClassId.W0: ("C3.3/4to5=1", "lhs"),
    ClassId.W1: ("C3.3/4to5=1", "rhs"),
    ClassId.W2: ("C3.3/4to5=2", "rhs"),
    ClassId.W7: ("C3.3/4to5=7", "rhs"),
    ClassId.W7B: ("C3.3/4to5=7b", "rhs"),
    ClassId.W6: ("C3.3/4to5=6", "rhs"),
    ClassId.W7C: ("C3.3/4to5=7c", "rhs"),
    ClassId.C3: ("Wat/4to5=3", "rhs"),
    ClassId.C4: ("Wat/4to5=4", "rhs"),
    ClassId.C5: ("Wat/4to5=5", "rhs"),
    ClassId.C6B: ("Wat/4to5=6b", "rhs"),
    ClassId.CW1: ("cWat/4phi3=1", "rhs"),
    ClassId.CW2: ("cWat/4phi3=2", "rhs"),
    ClassId.CW3: ("cWat/4phi3=3", "rhs"),
    ClassId.CW4: ("cWat/4phi3=4", "rhs"),
}

Label = Union[ClassId, RepId]


@dataclass(frozen=True)
class Template:
    """A class representative; ``base == to_base * series`` for the class's base expression."""

    label: Hashable
    series: SeriesSpec
    to_base: Prefactor


def _relabel_series(series: SeriesSpec, mapping: Dict[str, str], frame: Frame) -> SeriesSpec:
    return series.map_monomials(lambda m: frame.reduce(m.relabel(mapping)))


def canonical_signature(expr: Union[Expression, SeriesSpec], frame: Frame = BCDEF) -> tuple:
    """
    Smallest series encoding over all relabelings of ``frame``; parameter order
    is already removed by sorting.
    """
    series = expr.series if isinstance(expr, Expression) else expr
    return min(series_key(_relabel_series(series, mapping, frame), frame.variables) for mapping in frame.relabelings())


class Classifier:
    """
    Precomputed lookup from the encoding of every relabeled template to its
    class and relabeling, so matching a series is a single lookup.
    """

    def __init__(self, templates: Sequence[Template], frame: Frame):
        self.frame = frame
        self.templates = {t.label: t for t in templates}
        self._table: Dict[tuple, Tuple[Hashable, Dict[str, str]]] = {}
        for template in templates:
            for mapping in frame.relabelings():
                key = series_key(_relabel_series(template.series, mapping, frame), frame.variables)
                label, _ = self._table.setdefault(key, (template.label, mapping))
                if label != template.label:
                    raise ValueError(f"Templates {label} and {template.label} share a signature")

    def key(self, series: SeriesSpec) -> tuple:
        return series_key(series.map_monomials(self.frame.reduce), self.frame.variables)

    def match(self, series: SeriesSpec) -> Optional[Tuple[Hashable, Dict[str, str]]]:
        return self._table.get(self.key(series))

    def classify(self, expr: Union[Expression, SeriesSpec]) -> Hashable:
        series = expr.series if isinstance(expr, Expression) else expr
        hit = self.match(series)
        if hit is None:
            logger.debug(f"No template matches {series}")
            return ClassId.UNCLASSIFIED
        return hit[0]

    def to_base(self, label: Hashable, mapping: Dict[str, str]) -> Prefactor:
        return self.templates[label].to_base.relabel(mapping)

    def signatures(self) -> Dict[Hashable, tuple]:
        return {label: canonical_signature(t.series, self.frame) for label, t in self.templates.items()}


def _identity_template(label: ClassId) -> Template:
    identity_id, side = _TEMPLATE_SOURCES[label]
    spec = get_identity(identity_id)
    if side == "lhs":
        return Template(label, spec.lhs.series, spec.lhs.prefactor)
    return Template(label, spec.rhs.series, spec.rhs.prefactor)


@functools.lru_cache(maxsize=None)
def expression_classifier() -> Classifier:
    return Classifier([_identity_template(label) for label in EXPRESSION_CLASSES], BCDEF)


@functools.lru_cache(maxsize=None)
def converse_classifier() -> Classifier:
    return Classifier([_identity_template(label) for label in CONVERSE_CLASSES], ABCDEF)


@functools.lru_cache(maxsize=None)
def aw_classifier() -> Classifier:
    templates = []
    for rep in RepId:
        expr = aw_expression(rep)
        templates.append(Template(rep, expr.series, expr.prefactor))
    return Classifier(templates, AW)


def classifier_for(series: SeriesSpec) -> Classifier:
    names = {name for m in series.monomials() for name in m.variables}
    if names & {"a1", "a2", "a3", "a4", "t"}:
        return aw_classifier()
    if "a" in names:
        return converse_classifier()
    return expression_classifier()


def classify(expr: Union[Expression, SeriesSpec]) -> Hashable:
    series = expr.series if isinstance(expr, Expression) else expr
    return classifier_for(series).classify(series)


def classify_with_relabeling(expr: Union[Expression, SeriesSpec]) -> Tuple[Hashable, Optional[Dict[str, str]]]:
    series = expr.series if isinstance(expr, Expression) else expr
    hit = classifier_for(series).match(series)
    return hit if hit is not None else (ClassId.UNCLASSIFIED, None)


def template_digest() -> str:
    digest = hashlib.sha256()
    for classifier in (expression_classifier(), converse_classifier(), aw_classifier()):
        for label, signature in sorted(classifier.signatures().items(), key=lambda item: str(item[0].value)):
            digest.update(f"{label.value}:{signature!r}\n".encode())
    return digest.hexdigest()
