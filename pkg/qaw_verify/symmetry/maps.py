# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, NamedTuple, Optional

from qaw_verify.askey_wilson import flip
from qaw_verify.field import Q_MINUS_N, monomial
from qaw_verify.series import Expression, PhiSpec, WSpec, converse_parameters, invert, watson_converse, watson_forms
from qaw_verify.symmetry.signature import (
    EXPRESSION_CLASSES,
    PHI_CLASSES,
    W_CLASSES,
    ClassId,
    Classifier,
    aw_classifier,
    converse_classifier,
    expression_classifier,
)

logger = logging.getLogger(__name__)

PHI_TO_W = "phi->w"
W_TO_PHI = "w->phi"

# (b, c, d, e, f) -> (q^-n t^2, a1 t, a2 t, a3 t, a4 t)
STANDARD_MAP = {
    "b": monomial(n=-1, t=2),
    "c": monomial(a1=1, t=1),
    "d": monomial(a2=1, t=1),
    "e": monomial(a3=1, t=1),
    "f": monomial(a4=1, t=1),
}


class MapEdge(NamedTuple):
    source: Hashable
    target: Optional[Hashable]
    flip: bool = False


def _match(classifier: Classifier, series, allow_flip: bool) -> MapEdge:
    hit = classifier.match(series)
    if hit is not None:
        return MapEdge(None, hit[0], False)
    if allow_flip:
        hit = classifier.match(flip(Expression(series)).series)
        if hit is not None:
            return MapEdge(None, hit[0], True)
    return MapEdge(None, None, False)


def inversion_edges(classifier: Classifier, allow_flip: bool = False) -> List[MapEdge]:
    """Class of the reversed series of every template; ``target`` is None when nothing matches."""
    edges = []
    for label, template in classifier.templates.items():
        series = template.series.map_monomials(classifier.frame.reduce)
        edge = _match(classifier, invert(series).series, allow_flip)._replace(source=label)
        if edge.target is None:
            logger.warning(f"Inverse of {label.value} matches no template")
        edges.append(edge)
    return edges


def expression_inversions() -> List[MapEdge]:
    return inversion_edges(expression_classifier())


def converse_inversions() -> List[MapEdge]:
    return inversion_edges(converse_classifier())


def aw_inversions() -> List[MapEdge]:
    return inversion_edges(aw_classifier(), allow_flip=True)


def standard_map_edges() -> List[MapEdge]:
    """Image of every class template under the standard map, with ``t -> 1/t`` when needed."""
    classifier, aw = expression_classifier(), aw_classifier()
    edges = []
    for label in EXPRESSION_CLASSES:
        series = classifier.templates[label].series.map_monomials(lambda m: m.substitute(STANDARD_MAP))
        edge = _match(aw, series, allow_flip=True)._replace(source=label)
        if edge.target is None:
            logger.warning(f"Standard map sends {label.value} to no representation")
        edges.append(edge)
    return edges


TABULATED_PHI_TO_W: Dict[ClassId, Dict[ClassId, int]] = {
    source: dict(zip(W_CLASSES, counts))
    for source, counts in (
        (ClassId.C3, (4, 4, 56, 20, 20, 20, 20)),
        (ClassId.C4, (4, 4, 56, 20, 20, 20, 20)),
        (ClassId.C5, (6, 6, 60, 18, 18, 18, 18)),
        (ClassId.C6B, (6, 6, 60, 18, 18, 18, 18)),
    )
}

TABULATED_W_TO_PHI: Dict[ClassId, Dict[ClassId, int]] = {
    source: dict(zip(PHI_CLASSES, counts))
    for source, counts in (
        (ClassId.W0, (24, 24, 24, 24)),
        (ClassId.W1, (24, 24, 24, 24)),
        (ClassId.W2, (28, 28, 20, 20)),
        (ClassId.W7, (30, 30, 16, 16)),
        (ClassId.W7B, (30, 30, 16, 16)),
        (ClassId.W6, (30, 30, 16, 16)),
        (ClassId.W7C, (30, 30, 16, 16)),
    )
}


@dataclass
class WatsonCensus:
    """
    Target classes reached by the Watson rewrite and its converse over every
    ordering of the non-terminating parameters; each ordering contributes one
    count per rewritten form.
    """

    direction: str
    rows: Dict[ClassId, Dict[Hashable, int]]
    reference: Dict[ClassId, Dict[ClassId, int]]
    deltas: List[str] = field(default_factory=list)

    def __post_init__(self):
        for source, expected in self.reference.items():
            found = self.rows.get(source, {})
            for target in sorted(set(expected) | set(found), key=lambda label: label.value):
                if found.get(target, 0) != expected.get(target, 0):
                    self.deltas.append(
                        f"{source.value} -> {target.value}: ours {found.get(target, 0)}, tabulated {expected.get(target, 0)}"
                    )


def _phi_to_w() -> Dict[ClassId, Dict[Hashable, int]]:
    classifier = expression_classifier()
    rows = {}
    for source in PHI_CLASSES:
        a, b, c, d, e, f = converse_parameters(classifier.templates[source].series)
        counts = Counter()
        for upper in itertools.permutations((a, b, c)):
            for lower in itertools.permutations((d, e, f)):
                for form in watson_converse(PhiSpec((Q_MINUS_N,) + upper, lower)):
                    counts[classifier.classify(form)] += 1
        rows[source] = dict(counts)
    return rows


def _w_to_phi() -> Dict[ClassId, Dict[Hashable, int]]:
    classifier = expression_classifier()
    rows = {}
    for source in W_CLASSES:
        w = classifier.templates[source].series
        others = [m for i, m in enumerate(w.numer) if i != w.terminating_index]
        counts = Counter()
        for order in itertools.permutations(others):
            for form in watson_forms(WSpec(w.special, (Q_MINUS_N,) + order, w.argument)):
                counts[classifier.classify(form)] += 1
        rows[source] = dict(counts)
    return rows


def watson_permutation_census(direction: str) -> WatsonCensus:
    if direction == PHI_TO_W:
        census = WatsonCensus(direction, _phi_to_w(), TABULATED_PHI_TO_W)
    elif direction == W_TO_PHI:
        census = WatsonCensus(direction, _w_to_phi(), TABULATED_W_TO_PHI)
    else:
        raise ValueError(f"Unknown Watson census direction {direction}")
    for delta in census.deltas:
        logger.warning(f"Watson census {direction}: {delta}")
    return census
