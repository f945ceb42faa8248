# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


class SamplingExhausted(RuntimeError):
    pass


class ZeroBase(ValueError):
    pass


class EvaluationError(ArithmeticError):
    """Raised when a symbolic object cannot be evaluated at a concrete point."""


class DivergentDenominator(EvaluationError):
    def __init__(self, parameter: str, k: int):
        super().__init__(f"({parameter};q)_{k} vanishes in a denominator")
        self.parameter = parameter
        self.k = k


class SpecialPointB(EvaluationError):
    pass


class IrrationalValue(EvaluationError):
    pass


class NoTerminatingSlot(ValueError):
    pass


class TemplateMismatch(ValueError):
    pass


class NotBalanced(ValueError):
    pass


class ConstraintViolated(ValueError):
    pass


class OddParity(ValueError):
    pass


class CatalogParseError(ValueError):
    pass
