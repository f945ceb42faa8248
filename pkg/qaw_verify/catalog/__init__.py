# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from qaw_verify.catalog.identities import IdentitySpec, catalog, get_identity
from qaw_verify.catalog.notation import parse_expression, parse_monomial
from qaw_verify.catalog.verify import (
    VerificationReport,
    VerificationSummary,
    export_catalog,
    load_catalog,
    mutations,
    sample_envs,
    verify_all,
    verify_identity,
)

__all__ = [
    "IdentitySpec",
    "VerificationReport",
    "VerificationSummary",
    "catalog",
    "export_catalog",
    "get_identity",
    "load_catalog",
    "mutations",
    "parse_expression",
    "parse_monomial",
    "sample_envs",
    "verify_all",
    "verify_identity",
]
