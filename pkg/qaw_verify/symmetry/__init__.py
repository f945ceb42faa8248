# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from qaw_verify.symmetry.graphs import __graphs__, emit_graph, get_graph
from qaw_verify.symmetry.maps import (
    PHI_TO_W,
    W_TO_PHI,
    MapEdge,
    WatsonCensus,
    aw_inversions,
    converse_inversions,
    expression_inversions,
    inversion_edges,
    standard_map_edges,
    watson_permutation_census,
)
from qaw_verify.symmetry.orbits import (
    REFERENCE_CONVERSE,
    REFERENCE_S6,
    REFERENCE_WD5,
    TABULATED_WD5,
    SignedPerm,
    WConfig,
    X6Config,
    blocks,
    compare_rows,
    converse_census,
    s6_apply,
    s6_arrangements,
    s6_census,
    s6_elements,
    s6_value_check,
    terminating_counts,
    wd5_apply,
    wd5_census,
    wd5_elements,
    wd5_rows,
    wd5_value_check,
)
from qaw_verify.symmetry.signature import (
    CONVERSE_CLASSES,
    EXPRESSION_CLASSES,
    PHI_CLASSES,
    W_CLASSES,
    ClassId,
    Classifier,
    aw_classifier,
    canonical_signature,
    classify,
    classify_with_relabeling,
    converse_classifier,
    expression_classifier,
    template_digest,
)
from qaw_verify.symmetry.union_find import UnionFind, association_blocks


__all__ = [
    "CONVERSE_CLASSES",
    "ClassId",
    "Classifier",
    "EXPRESSION_CLASSES",
    "MapEdge",
    "PHI_CLASSES",
    "PHI_TO_W",
    "REFERENCE_CONVERSE",
    "REFERENCE_S6",
    "REFERENCE_WD5",
    "SignedPerm",
    "TABULATED_WD5",
    "UnionFind",
    "WConfig",
    "W_CLASSES",
    "W_TO_PHI",
    "WatsonCensus",
    "X6Config",
    "__graphs__",
    "association_blocks",
    "aw_classifier",
    "aw_inversions",
    "blocks",
    "canonical_signature",
    "classify",
    "classify_with_relabeling",
    "compare_rows",
    "converse_census",
    "converse_classifier",
    "converse_inversions",
    "emit_graph",
    "expression_classifier",
    "expression_inversions",
    "get_graph",
    "inversion_edges",
    "s6_apply",
    "s6_arrangements",
    "s6_census",
    "s6_elements",
    "s6_value_check",
    "standard_map_edges",
    "template_digest",
    "terminating_counts",
    "watson_permutation_census",
    "wd5_apply",
    "wd5_census",
    "wd5_elements",
    "wd5_rows",
    "wd5_value_check",
]
