# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.

import logging

from qaw_verify.askey_wilson import RepId, aw_expression, aw_sweep, aw_symmetry_check
from qaw_verify.catalog import catalog, get_identity, verify_all
from qaw_verify.symmetry import ClassId, classify, emit_graph


def set_logging_level(level: int):
    logger = logging.getLogger(__name__.split(".")[0])
    logger.setLevel(level)


__all__ = {
    "ClassId": ClassId,
    "RepId": RepId,
    "aw_expression": aw_expression,
    "aw_sweep": aw_sweep,
    "aw_symmetry_check": aw_symmetry_check,
    "catalog": catalog,
    "classify": classify,
    "emit_graph": emit_graph,
    "get_identity": get_identity,
    "verify_all": verify_all,
}
