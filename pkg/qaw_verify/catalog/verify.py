# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import hashlib
import itertools
import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from qaw_verify.catalog.identities import IdentitySpec, build_identity, catalog
from qaw_verify.catalog.notation import expression_record, monomial_table
from qaw_verify.errors import CatalogParseError, ConstraintViolated, EvaluationError
from qaw_verify.field import Q_MINUS_N, ParamMonomial, PointEnv, next_seed, sample_point
from qaw_verify.series import Expression, Prefactor

logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    id: str
    equivalent: bool = False
    fingerprints: List[str] = field(default_factory=list)
    residuals: List[Fraction] = field(default_factory=list)
    skips: List[Tuple[str, str]] = field(default_factory=list)
    micros: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.residuals) and all(r == 0 for r in self.residuals)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "pass": self.passed,
            "envs": len(self.fingerprints),
            "skips": len(self.skips),
            "micros": self.micros,
            "fingerprints": self.fingerprints,
            "skip_reasons": [f"{fp}: {reason}" for fp, reason in self.skips],
        }


def verify_identity(spec: IdentitySpec, envs: Sequence[PointEnv]) -> VerificationReport:
    """Exact residual ``lhs - rhs`` at every point; points failing a guard are skipped."""
    report = VerificationReport(spec.id, spec.equivalent)
    start = time.perf_counter_ns()
    for env in envs:
        report.fingerprints.append(env.fingerprint)
        try:
            spec.check_constraints(env)
            residual = spec.lhs.evaluate(env) - spec.rhs.evaluate(env)
        except (EvaluationError, ConstraintViolated) as e:
            logger.debug(f"Skipping {spec.id} at {env}: {e}")
            report.skips.append((env.fingerprint, str(e)))
            continue
        report.residuals.append(residual)
    report.micros = (time.perf_counter_ns() - start) // 1000
    if not report.passed:
        logger.warning(f"Identity {spec.id} failed: {len(report.skips)} skips, residuals {report.residuals}")
    return report


def identity_seed(identity_id: str, seed: int) -> int:
    digest = hashlib.sha256(f"{identity_id}/{seed}".encode()).hexdigest()
    return next_seed(int(digest[:12], 16))


def sample_envs(spec: IdentitySpec, seed: int, n_max: int, count: int, n_min: int = 0) -> List[PointEnv]:
    square = spec.lhs.needs_roots or spec.rhs.needs_roots
    guards = spec.guards()
    s = identity_seed(spec.id, seed)
    envs = []
    for i in range(count):
        n = n_min + i % (n_max - n_min + 1)
        envs.append(sample_point(spec.frame, n, s, guards, square=square))
        s = next_seed(s)
    return envs


@dataclass
class VerificationSummary:
    seed: int
    n_max: int
    envs_per_identity: int
    reports: List[VerificationReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def tally(self, equivalent: bool = False) -> Tuple[int, int]:
        chosen = [r for r in self.reports if r.equivalent == equivalent]
        return sum(r.passed for r in chosen), len(chosen)

    def to_dict(self) -> Dict[str, Any]:
        passed, total = self.tally()
        eq_passed, eq_total = self.tally(equivalent=True)
        return {
            "run": {"seed": self.seed, "nmax": self.n_max, "envs": self.envs_per_identity},
            "identities": {"passed": passed, "total": total},
            "equivalents": {"passed": eq_passed, "total": eq_total},
            "results": [r.to_dict() for r in self.reports],
            "failures": [r.id for r in self.reports if not r.passed],
        }


def verify_all(
    seed: int = 1,
    n_max: int = 6,
    envs_per_identity: int = 25,
    specs: Optional[Sequence[IdentitySpec]] = None,
) -> VerificationSummary:
    specs = catalog(include_equivalents=True) if specs is None else specs
    logger.info(f"Verifying {len(specs)} identities, seed={seed}, n<={n_max}, {envs_per_identity} points each")
    reports = [verify_identity(spec, sample_envs(spec, seed, n_max, envs_per_identity)) for spec in specs]
    summary = VerificationSummary(seed, n_max, envs_per_identity, reports)
    passed, total = summary.tally()
    logger.info(f"{passed}/{total} identities passed")
    return summary


def _bump_q(m: ParamMonomial) -> ParamMonomial:
    return ParamMonomial(m.sign, m.q_exp + 1, m.n_coeff, m.var_exps)


def mutations(expr: Expression) -> Iterator[Expression]:
    """
    Single-exponent perturbations of ``expr``: the series argument first, then
    every non-terminating series parameter, then the prefactor power.
    """
    slots = list(expr.series.monomials())
    order = [len(slots) - 1] + [k for k, m in enumerate(slots[:-1]) if m != Q_MINUS_N]
    for target in order:
        counter = itertools.count()
        series = expr.series.map_monomials(lambda m: _bump_q(m) if next(counter) == target else m)
        yield Expression(series, expr.prefactor)
    pre = expr.prefactor
    yield Expression(expr.series, Prefactor(pre.qbinom_exp, pre.sign_exp, _bump_q(pre.power_base), pre.poch_factors))


def identity_record(spec: IdentitySpec) -> Dict[str, Any]:
    return {
        "id": spec.id,
        "frame": spec.frame.name,
        "anchor": spec.anchor,
        "equivalent": spec.equivalent,
        "constraints": [[monomial_table(left), monomial_table(right)] for left, right in spec.constraints],
        "lhs": expression_record(spec.lhs),
        "rhs": expression_record(spec.rhs),
    }


def export_catalog(path: Union[str, Path], specs: Optional[Sequence[IdentitySpec]] = None) -> None:
    specs = catalog(include_equivalents=True) if specs is None else specs
    with open(path, "w") as f:
        json.dump([identity_record(spec) for spec in specs], f, indent=1)
        f.write("\n")


def load_catalog(path: Union[str, Path]) -> List[IdentitySpec]:
    try:
        with open(path) as f:
            records = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise CatalogParseError(f"Cannot read catalog {path}: {e}") from e
    if not isinstance(records, list):
        raise CatalogParseError(f"Catalog {path} must hold a list of identity records")
    return [build_identity(record) for record in records]
