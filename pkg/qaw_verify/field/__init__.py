# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from qaw_verify.field.frames import ABCDEF, AW, BCDEF, Frame, get_frame
from qaw_verify.field.monomial import ONE, Q, Q_MINUS_N, ParamMonomial, monomial, product, q_power, var
from qaw_verify.field.point import PointEnv, eval_monomial, exact_power
from qaw_verify.field.sampling import is_admissible, next_seed, sample_point, split_seed

__all__ = [
    "ABCDEF",
    "AW",
    "BCDEF",
    "Frame",
    "ONE",
    "ParamMonomial",
    "PointEnv",
    "Q",
    "Q_MINUS_N",
    "eval_monomial",
    "exact_power",
    "get_frame",
    "is_admissible",
    "monomial",
    "next_seed",
    "product",
    "q_power",
    "sample_point",
    "split_seed",
    "var",
]
