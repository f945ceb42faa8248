# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import logging
from typing import Callable, Dict, Hashable, Iterable, Iterator, Mapping, Sequence

from qaw_verify.askey_wilson import RepId
from qaw_verify.symmetry.maps import MapEdge, aw_inversions, converse_inversions, expression_inversions, standard_map_edges
from qaw_verify.symmetry.orbits import blocks, converse_census, terminating_counts, wd5_rows
from qaw_verify.symmetry.signature import CONVERSE_CLASSES, EXPRESSION_CLASSES, W_CLASSES

logger = logging.getLogger(__name__)

FLIP_LABEL = "t -> 1/t"


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


def _node(label: Hashable, shape: str) -> str:
    return f"  {_gvquote(label.value)} [shape={shape}];"


def _inversion_lines(edges: Iterable[MapEdge], nodes: Sequence[Hashable]) -> Iterator[str]:
    """One thick two-way edge per unordered pair; self-inverse classes get a loop."""
    seen = set()
    for edge in edges:
        if edge.target is None or edge.source not in nodes or edge.target not in nodes:
            continue
        pair = frozenset((edge.source, edge.target))
        if pair in seen:
            continue
        seen.add(pair)
        attrs = 'dir=both, penwidth=3, class="inversion"'
        if edge.flip:
            attrs += f", label={_gvquote(FLIP_LABEL)}"
        yield f"  {_gvquote(edge.source.value)} -> {_gvquote(edge.target.value)} [{attrs}];"


def _group_action_lines(rows: Mapping[Hashable, Mapping[Hashable, int]]) -> Iterator[str]:
    for source, row in rows.items():
        for target, count in terminating_counts(row).items():
            if target != source:
                yield (
                    f"  {_gvquote(source.value)} -> {_gvquote(target.value)} "
                    f'[penwidth=1, class="group-action", label="{count}"];'
                )


def _cluster_lines(rows: Mapping[Hashable, Mapping[Hashable, int]]) -> Iterator[str]:
    for k, block in enumerate(blocks(rows)):
        members = " ".join(f"{_gvquote(label.value)};" for label in block)
        yield f"  subgraph cluster_{k} {{ style=filled; fillcolor=lightgrey; {members} }}"


def fig1_lines() -> Iterator[str]:
    """Expression classes, representations, inversions and the standard map."""
    yield "digraph fig1 {"
    yield "  rankdir=LR;"
    for label in EXPRESSION_CLASSES:
        yield _node(label, "box")
    for rep in RepId:
        yield _node(rep, "ellipse")
    yield from _inversion_lines(expression_inversions(), EXPRESSION_CLASSES)
    yield from _inversion_lines(aw_inversions(), tuple(RepId))
    for edge in standard_map_edges():
        if edge.target is None:
            continue
        attrs = 'style=dashed, arrowhead=vee, class="mapsto"'
        if edge.flip:
            attrs += f", label={_gvquote(FLIP_LABEL)}"
        yield f"  {_gvquote(edge.source.value)} -> {_gvquote(edge.target.value)} [{attrs}];"
    yield "}"


def fig2_lines() -> Iterator[str]:
    rows = wd5_rows()
    yield "digraph fig2 {"
    for label in W_CLASSES:
        yield _node(label, "box")
    yield from _cluster_lines(rows)
    yield from _group_action_lines(rows)
    yield from _inversion_lines(expression_inversions(), W_CLASSES)
    yield "}"


def fig3_lines() -> Iterator[str]:
    rows = converse_census()
    yield "digraph fig3 {"
    for label in CONVERSE_CLASSES:
        yield _node(label, "box")
    yield from _cluster_lines(rows)
    yield from _group_action_lines(rows)
    yield from _inversion_lines(converse_inversions(), CONVERSE_CLASSES)
    yield "}"


__graphs__: Dict[str, Callable[[], Iterator[str]]] = {
    "fig1": fig1_lines,
    "fig2": fig2_lines,
    "fig3": fig3_lines,
}


def get_graph(name: str) -> Callable[[], Iterator[str]]:
    try:
        return __graphs__[name]
    except KeyError as e:
        raise ValueError(f"Unknown graph {name}") from e


def emit_graph(which: str) -> str:
    lines = list(get_graph(which)())
    logger.info(f"Emitted {which} with {len(lines)} lines")
    return "\n".join(lines) + "\n"
