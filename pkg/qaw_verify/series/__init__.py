# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from qaw_verify.series.expression import Expression, PochFactor, Prefactor
from qaw_verify.series.kernel import (
    N,
    TWO_N,
    PhiSpec,
    PochLength,
    SeriesSpec,
    WSpec,
    balance_level,
    eval_phi,
    eval_series,
    eval_w,
    is_very_well_poised,
    poch_base_invert,
    q_pochhammer,
    series_key,
)
from qaw_verify.series.transforms import (
    converse_parameters,
    invert_phi,
    invert_w,
    watson_converse,
    watson_converse_equivalents,
    watson_forms,
    watson_parameters,
)


def invert(series: SeriesSpec) -> Expression:
    if isinstance(series, WSpec):
        return invert_w(series)
    return invert_phi(series)


__all__ = [
    "N",
    "TWO_N",
    "Expression",
    "PhiSpec",
    "PochFactor",
    "PochLength",
    "Prefactor",
    "SeriesSpec",
    "WSpec",
    "balance_level",
    "converse_parameters",
    "eval_phi",
    "eval_series",
    "eval_w",
    "invert",
    "invert_phi",
    "invert_w",
    "is_very_well_poised",
    "poch_base_invert",
    "q_pochhammer",
    "series_key",
    "watson_converse",
    "watson_converse_equivalents",
    "watson_forms",
    "watson_parameters",
]
