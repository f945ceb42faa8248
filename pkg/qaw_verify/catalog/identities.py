# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import functools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Tuple

from qaw_verify.catalog.notation import parse_expression
from qaw_verify.errors import CatalogParseError, ConstraintViolated
from qaw_verify.field import ABCDEF, Frame, ParamMonomial, PointEnv, eval_monomial, get_frame, monomial
from qaw_verify.series import Expression, Prefactor, series_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    lhs: Expression
    rhs: Expression
    frame: Frame
    constraints: Tuple[Tuple[ParamMonomial, ParamMonomial], ...] = ()
    anchor: str = ""
    equivalent: bool = False

    def check_constraints(self, env: PointEnv) -> None:
        for left, right in self.constraints:
            if eval_monomial(left, env) != eval_monomial(right, env):
                raise ConstraintViolated(f"{left} != {right} at {env}")

    def guards(self) -> Tuple[ParamMonomial, ...]:
        return self.lhs.guards() + self.rhs.guards()


W0 = {"w": {"b": "b", "numer": ["q^-n", "c", "d", "e", "f"], "arg": "q^(n+2) b^2/c d e f"}}
BALANCED_4PHI3 = {"phi": {"upper": ["q^-n", "a", "b", "c"], "lower": ["d", "e", "f"], "arg": "q"}}
QB_OVER = ["q b/c", "q b/d", "q b/e", "q b/f"]

PRIMARY_RECORDS: List[Dict[str, Any]] = [
    # a terminating 8W7 rewritten as a terminating 8W7
    {
        "id": "C3.3/4to5=1",
        "anchor": "8W7 inversion of the Watson-type 8W7",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {
                "qbinom": 1,
                "sign": 1,
                "power": "q^2 b^2/c d e f",
                "num": ["q b", "b", "c", "d", "e", "f"],
                "den": ["b@2n"] + QB_OVER,
            },
            "w": {
                "b": "q^(-2n)/b",
                "numer": ["q^-n", "q^-n c/b", "q^-n d/b", "q^-n e/b", "q^-n f/b"],
                "arg": "q^(n+2) b^2/c d e f",
            },
        },
    },
    {
        "id": "C3.3/4to5=2",
        "anchor": "8W7 to 8W7, self-inverse form",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {"num": ["q b/c e", "q b/c f", "q b", "d"], "den": ["q b/c", "q b/e", "q b/f", "d/c"]},
            "w": {"b": "q^-n c/d", "numer": ["q^-n", "q^-n c/b", "q b/d e", "q b/d f", "c"], "arg": "e f/b"},
        },
    },
    {
        "id": "C3.3/4to5=7",
        "anchor": "8W7 to 8W7 with argument q/c",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {"num": ["q b/d e", "q b/d f", "q b/e f", "q b"], "den": ["q b/d e f", "q b/d", "q b/e", "q b/f"]},
            "w": {"b": "q^(-n-1) d e f/b", "numer": ["q^-n", "d", "e", "f", "q^(-n-1) c d e f/b^2"], "arg": "q/c"},
        },
    },
    {
        "id": "C3.3/4to5=7b",
        "anchor": "inverse of the 8W7 with argument q/c",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {
                "num": ["q^2 b^2/c d e f", "q b", "d", "e", "f"],
                "den": ["d e f/q b", "q b/c", "q b/d", "q b/e", "q b/f"],
            },
            "w": {"b": "q^(1-n) b/d e f", "numer": ["q^-n", "q^-n c/b", "q b/d e", "q b/d f", "q b/e f"], "arg": "q/c"},
        },
    },
    {
        "id": "C3.3/4to5=6",
        "anchor": "8W7 to 8W7 with argument q^(n+1) b/c",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {"num": ["q^2 b^2/c d e f", "q b"], "den": ["q b/c", "q^2 b^2/d e f"]},
            "w": {"b": "q b^2/d e f", "numer": ["q^-n", "q b/d e", "q b/d f", "q b/e f", "c"], "arg": "q^(n+1) b/c"},
        },
    },
    {
        "id": "C3.3/4to5=7c",
        "anchor": "inverse of the 8W7 with argument q^(n+1) b/c",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {
                "qbinom": 1,
                "sign": 1,
                "power": "q b/c",
                "num": ["q b^2/d e f", "q b/e f", "q b/d e", "q b/d f", "q b", "c"],
                "den": ["q b^2/d e f@2n"] + QB_OVER,
            },
            "w": {
                "b": "q^(-2n-1) d e f/b^2",
                "numer": ["q^-n", "q^-n d/b", "q^-n e/b", "q^-n f/b", "q^(-n-1) c d e f/b^2"],
                "arg": "q^(n+1) b/c",
            },
        },
    },
    # Watson's transformation to balanced 4phi3s
    {
        "id": "Wat/4to5=3",
        "anchor": "Watson 8W7 to balanced 4phi3",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {"num": ["q b", "q b/e f"], "den": ["q b/e", "q b/f"]},
            "phi": {"upper": ["q^-n", "q b/c d", "e", "f"], "lower": ["q^-n e f/b", "q b/c", "q b/d"], "arg": "q"},
        },
    },
    {
        "id": "Wat/4to5=4",
        "anchor": "Watson 8W7 to the inverted balanced 4phi3",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {"power": "q b/c d", "num": ["q b/e f", "q b", "c", "d"], "den": QB_OVER},
            "phi": {
                "upper": ["q^-n", "q^-n e/b", "q^-n f/b", "q b/c d"],
                "lower": ["q^-n e f/b", "q^(1-n)/c", "q^(1-n)/d"],
                "arg": "q",
            },
        },
    },
    {
        "id": "Wat/4to5=5",
        "anchor": "Watson 8W7 to balanced 4phi3 with lower q^2 b^2/c d e f",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {"num": ["q^2 b^2/c d e f", "q b", "e"], "den": ["q b/c", "q b/d", "q b/f"]},
            "phi": {
                "upper": ["q^-n", "q b/c e", "q b/d e", "q b/e f"],
                "lower": ["q^2 b^2/c d e f", "q^(1-n)/e", "q b/e"],
                "arg": "q",
            },
        },
    },
    {
        "id": "Wat/4to5=6b",
        "anchor": "Watson 8W7 to its inverted balanced 4phi3",
        "frame": "BCDEF",
        "lhs": W0,
        "rhs": {
            "pre": {"power": "e", "num": ["q b/c e", "q b/d e", "q b/e f", "q b"], "den": QB_OVER},
            "phi": {
                "upper": ["q^-n", "q^(-n-1) c d e f/b^2", "q^-n e/b", "e"],
                "lower": ["q^-n c e/b", "q^-n d e/b", "q^-n e f/b"],
                "arg": "q",
            },
        },
    },
    # balanced 4phi3 back to terminating 8W7s
    {
        "id": "cWat/4phi3=1",
        "anchor": "balanced 4phi3 to 8W7 with argument q a/f",
        "frame": "ABCDEF",
        "lhs": BALANCED_4PHI3,
        "rhs": {
            "pre": {"num": ["f/b", "f/c"], "den": ["f/b c", "f"]},
            "w": {"b": "q^-n b c/f", "numer": ["q^-n", "e/a", "d/a", "b", "c"], "arg": "q a/f"},
        },
    },
    {
        "id": "cWat/4phi3=2",
        "anchor": "balanced 4phi3 to the inverted 8W7 with argument q a/f",
        "frame": "ABCDEF",
        "lhs": BALANCED_4PHI3,
        "rhs": {
            "pre": {"num": ["e f/b c", "e/a", "b", "c"], "den": ["e f/a b c", "b c/f", "e", "f"]},
            "w": {"b": "q^-n f/b c", "numer": ["q^-n", "q^(1-n)/d", "q^(1-n)/e", "f/b", "f/c"], "arg": "q a/f"},
        },
    },
    {
        "id": "cWat/4phi3=3",
        "anchor": "balanced 4phi3 to 8W7 with argument q/a",
        "frame": "ABCDEF",
        "lhs": BALANCED_4PHI3,
        "rhs": {
            "pre": {"power": "c", "num": ["d/c", "e/c", "f/c", "b"], "den": ["b/c", "d", "e", "f"]},
            "w": {"b": "q^-n c/b", "numer": ["q^-n", "d/b", "e/b", "f/b", "c"], "arg": "q/a"},
        },
    },
    {
        "id": "cWat/4phi3=4",
        "anchor": "balanced 4phi3 to 8W7 with argument q^n f",
        "frame": "ABCDEF",
        "lhs": BALANCED_4PHI3,
        "rhs": {
            "pre": {"num": ["e/a", "e/b", "e/c"], "den": ["d e/a b c", "e/d", "e"]},
            "w": {"b": "q^-n d/e", "numer": ["q^-n", "q^(1-n)/e", "d/a", "d/b", "d/c"], "arg": "q^n f"},
        },
    },
    {
        "id": "cWat/4phi3=1eq",
        "anchor": "equivalent form of the balanced 4phi3 to 8W7 with argument q a/f",
        "frame": "ABCDEF",
        "equivalent": True,
        "lhs": BALANCED_4PHI3,
        "rhs": {
            "pre": {"num": ["d e/a b", "d e/a c"], "den": ["d e/a", "d e/a b c"]},
            "w": {"b": "d e/q a", "numer": ["q^-n", "d/a", "e/a", "b", "c"], "arg": "q a/f"},
        },
    },
    {
        "id": "cWat/4phi3=2eq",
        "anchor": "equivalent form of the balanced 4phi3 to the inverted 8W7",
        "frame": "ABCDEF",
        "equivalent": True,
        "lhs": BALANCED_4PHI3,
        "rhs": {
            "pre": {
                "qbinom": 1,
                "sign": 1,
                "power": "d e/b c",
                "num": ["d e/q a", "d/a", "e/a", "b", "c"],
                "den": ["d e/q a@2n", "d e/a b c", "e", "d"],
            },
            "w": {
                "b": "q^(1-2n) a/d e",
                "numer": ["q^-n", "q^(1-n)/d", "q^(1-n)/e", "q^(1-n) a b/d e", "q^(1-n) a c/d e"],
                "arg": "q a/f",
            },
        },
    },
]


def _w(special: str, numer: List[str], arg: str) -> Dict[str, Any]:
    return {"w": {"b": special, "numer": ["q^-n"] + numer, "arg": arg}}


def _phi(upper: List[str], lower: List[str]) -> Dict[str, Any]:
    return {"phi": {"upper": ["q^-n"] + upper, "lower": lower, "arg": "q"}}


def _interchanges(family: str, lhs: Dict[str, Any], rows: List[Tuple]) -> List[Dict[str, Any]]:
    records = []
    for k, (num, den, series) in enumerate(rows, start=2):
        records.append(
            {
                "id": f"{family}/r1=r{k}",
                "anchor": f"parameter interchange {k} of {family}",
                "frame": "BCDEF",
                "lhs": lhs,
                "rhs": dict(series, pre={"num": num, "den": den}),
            }
        )
    return records


INTERCHANGE_RECORDS: List[Dict[str, Any]] = (
    # the self-inverse 8W7 under interchanges of c, d, e, f
    _interchanges(
        "A3.5",
        _w("q^-n c/d", ["q^-n c/b", "q b/d e", "q b/d f", "c"], "e f/b"),
        [
            (
                ["q b/d e", "q b/d f", "q b/c", "d/c", "c"],
                ["q b/c e", "q b/c f", "q b/d", "c/d", "d"],
                _w("q^-n d/c", ["q^-n d/b", "q b/c e", "q b/c f", "d"], "e f/b"),
            ),
            (
                ["q b/c d", "q b/e", "d/c", "e"],
                ["q b/c e", "q b/d", "e/c", "d"],
                _w("q^-n c/e", ["q^-n c/b", "q b/d e", "q b/e f", "c"], "d f/b"),
            ),
            (
                ["q b/d e", "q b/e f", "q b/c", "d/c", "c"],
                ["q b/c e", "q b/c f", "q b/d", "c/e", "d"],
                _w("q^-n e/c", ["q^-n e/b", "q b/c d", "q b/c f", "e"], "d f/b"),
            ),
            (
                ["q b/c d", "q b/f", "d/c", "f"],
                ["q b/c f", "q b/d", "f/c", "d"],
                _w("q^-n c/f", ["q^-n c/b", "q b/e f", "q b/d f", "c"], "d e/b"),
            ),
            (
                ["q b/d f", "q b/e f", "q b/c", "d/c", "c"],
                ["q b/c e", "q b/c f", "q b/d", "c/f", "d"],
                _w("q^-n f/c", ["q^-n f/b", "q b/c d", "q b/c e", "f"], "d e/b"),
            ),
            (
                ["q b/e f", "d/c"],
                ["q b/c f", "d/e"],
                _w("q^-n e/d", ["q^-n e/b", "q b/c d", "q b/d f", "e"], "c f/b"),
            ),
            (
                ["q b/c d", "q b/d f", "q b/e", "d/c", "e"],
                ["q b/c e", "q b/c f", "q b/d", "e/d", "d"],
                _w("q^-n d/e", ["q^-n d/b", "q b/c e", "q b/e f", "d"], "c f/b"),
            ),
            (
                ["q b/e f", "d/c"],
                ["q b/c e", "d/f"],
                _w("q^-n f/d", ["q^-n f/b", "q b/c d", "q b/d e", "f"], "c e/b"),
            ),
            (
                ["q b/d e", "q b/c d", "q b/f", "d/c", "f"],
                ["q b/c e", "q b/c f", "q b/d", "f/d", "d"],
                _w("q^-n d/f", ["q^-n d/b", "q b/c f", "q b/e f", "d"], "c e/b"),
            ),
            (
                ["q b/d e", "q b/f", "d/c", "f"],
                ["q b/c f", "q b/d", "f/e", "d"],
                _w("q^-n e/f", ["q^-n e/b", "q b/c f", "q b/d f", "e"], "c d/b"),
            ),
            (
                ["q b/d f", "q b/e", "d/c", "e"],
                ["q b/c e", "q b/d", "e/f", "d"],
                _w("q^-n f/e", ["q^-n f/b", "q b/c e", "q b/d e", "f"], "c d/b"),
            ),
        ],
    )
    # the 8W7 with argument q^(n+1) b/c
    + _interchanges(
        "A3.6",
        _w("q b^2/d e f", ["q b/d e", "q b/d f", "q b/e f", "c"], "q^(n+1) b/c"),
        [
            (
                ["q b/c", "q^2 b^2/d e f"],
                ["q b/d", "q^2 b^2/c e f"],
                _w("q b^2/c e f", ["q b/c e", "q b/c f", "q b/e f", "d"], "q^(n+1) b/d"),
            ),
            (
                ["q b/c", "q^2 b^2/d e f"],
                ["q b/e", "q^2 b^2/c d f"],
                _w("q b^2/c d f", ["q b/c d", "q b/c f", "q b/d f", "e"], "q^(n+1) b/e"),
            ),
            (
                ["q b/c", "q^2 b^2/d e f"],
                ["q b/f", "q^2 b^2/c d e"],
                _w("q b^2/c d e", ["q b/c d", "q b/c e", "q b/d e", "f"], "q^(n+1) b/f"),
            ),
        ],
    )
    # Watson's balanced 4phi3
    + _interchanges(
        "A3.8",
        _phi(["q b/e f", "c", "d"], ["q^-n c d/b", "q b/e", "q b/f"]),
        [
            (["q b/d e", "q b/c"], ["q b/c d", "q b/e"], _phi(["q b/c f", "d", "e"], ["q^-n d e/b", "q b/c", "q b/f"])),
            (["q b/d f", "q b/c"], ["q b/c d", "q b/f"], _phi(["q b/c e", "d", "f"], ["q^-n d f/b", "q b/c", "q b/e"])),
            (["q b/c e", "q b/d"], ["q b/c d", "q b/e"], _phi(["q b/d f", "c", "e"], ["q^-n c e/b", "q b/d", "q b/f"])),
            (["q b/c f", "q b/d"], ["q b/c d", "q b/f"], _phi(["q b/d e", "c", "f"], ["q^-n c f/b", "q b/d", "q b/e"])),
            (
                ["q b/e f", "q b/c", "q b/d"],
                ["q b/c d", "q b/e", "q b/f"],
                _phi(["q b/c d", "e", "f"], ["q^-n e f/b", "q b/c", "q b/d"]),
            ),
        ],
    )
    # the balanced 4phi3 with lower q^2 b^2/c d e f
    + _interchanges(
        "A3.10",
        _phi(["q b/c d", "q b/c e", "q b/c f"], ["q^2 b^2/c d e f", "q^(1-n)/c", "q b/c"]),
        [
            (
                ["q b/d", "d"],
                ["q b/c", "c"],
                _phi(["q b/c d", "q b/d e", "q b/d f"], ["q^2 b^2/c d e f", "q^(1-n)/d", "q b/d"]),
            ),
            (
                ["q b/e", "e"],
                ["q b/c", "c"],
                _phi(["q b/c e", "q b/d e", "q b/e f"], ["q^2 b^2/c d e f", "q^(1-n)/e", "q b/e"]),
            ),
            (
                ["q b/f", "f"],
                ["q b/c", "c"],
                _phi(["q b/c f", "q b/d f", "q b/e f"], ["q^2 b^2/c d e f", "q^(1-n)/f", "q b/f"]),
            ),
        ],
    )
)

# base identity and images of (c, d, e, f) that produce each interchange family
INTERCHANGES: Dict[str, Tuple[str, List[str]]] = {
    "A3.5": (
        "C3.3/4to5=2",
        ["cdef", "dcef", "cedf", "ecdf", "cfed", "fcde", "edcf", "decf", "fdce", "dfce", "efcd", "fecd"],
    ),
    "A3.6": ("C3.3/4to5=6", ["cdef", "dcef", "edcf", "fdec"]),
    "A3.8": ("Wat/4to5=3", ["efcd", "cfde", "cedf", "dfce", "decf", "cdef"]),
    "A3.10": ("Wat/4to5=5", ["edcf", "cedf", "cdef", "cdfe"]),
}


def _relabeling(images: str) -> Dict[str, str]:
    return dict(zip("cdef", images))


def derived_records() -> List[Dict[str, Any]]:
    records = []
    for family, (base, images) in INTERCHANGES.items():
        for k in range(2, len(images) + 1):
            records.append(
                {
                    "id": f"{family}/r1=r{k}",
                    "anchor": f"parameter interchange derived from {base}",
                    "base": base,
                    "lhs_relabel": _relabeling(images[0]),
                    "rhs_relabel": _relabeling(images[k - 1]),
                }
            )
    return records


def _constraints(frame: Frame) -> Tuple[Tuple[ParamMonomial, ParamMonomial], ...]:
    if frame is ABCDEF:
        return ((monomial(q=1, n=-1, a=1, b=1, c=1), monomial(d=1, e=1, f=1)),)
    return ()


def build_identity(record: Mapping[str, Any]) -> IdentitySpec:
    if not isinstance(record, Mapping):
        raise CatalogParseError(f"Expected an identity record, got {record!r}")
    try:
        frame = get_frame(record.get("frame", "BCDEF"))
        return IdentitySpec(
            str(record["id"]),
            parse_expression(record["lhs"], frame.variables),
            parse_expression(record["rhs"], frame.variables),
            frame,
            _constraints(frame),
            str(record.get("anchor", "")),
            bool(record.get("equivalent", False)),
        )
    except CatalogParseError:
        raise
    except (KeyError, ValueError) as e:
        raise CatalogParseError(f"Malformed identity record {record.get('id', '?')}: {e}") from e


def derive_interchange(base: IdentitySpec, record: Mapping[str, Any]) -> IdentitySpec:
    """
    From ``L = P R`` with ``L`` invariant under both relabelings,
    ``R(s1) = P(s2)/P(s1) R(s2)``.
    """
    s1, s2 = record["lhs_relabel"], record["rhs_relabel"]
    variables = base.frame.variables
    if not base.lhs.prefactor.is_identity:
        raise CatalogParseError(f"Base identity {base.id} has a prefactor on its left side")
    for mapping in (s1, s2):
        if series_key(base.lhs.series.map_monomials(lambda m: m.relabel(mapping)), variables) != series_key(
            base.lhs.series, variables
        ):
            raise CatalogParseError(f"Left side of {base.id} is not invariant under {mapping}")
    lhs = Expression(base.rhs.series.map_monomials(lambda m: m.relabel(s1)))
    prefactor = (base.rhs.prefactor.relabel(s2) / base.rhs.prefactor.relabel(s1)).simplify()
    rhs = Expression(base.rhs.series.map_monomials(lambda m: m.relabel(s2)), prefactor)
    return IdentitySpec(record["id"], lhs, rhs, base.frame, base.constraints, record.get("anchor", ""))


@functools.lru_cache(maxsize=None)
def _build_catalog() -> Tuple[IdentitySpec, ...]:
    specs = {spec.id: spec for spec in map(build_identity, PRIMARY_RECORDS + INTERCHANGE_RECORDS)}
    logger.info(f"Built catalog of {len(specs)} identities")
    return tuple(specs.values())


def catalog(include_equivalents: bool = False) -> List[IdentitySpec]:
    return [spec for spec in _build_catalog() if include_equivalents or not spec.equivalent]


def get_identity(identity_id: str) -> IdentitySpec:
    for spec in _build_catalog():
        if spec.id == identity_id:
            return spec
    raise ValueError(f"Unknown identity {identity_id}")


def _factor_counts(prefactor: Prefactor) -> Counter:
    return Counter((f.base, f.length, f.exponent) for f in prefactor.simplify().poch_factors)


def same_prefactor(left: Prefactor, right: Prefactor) -> bool:
    """Equality up to factor order and cancellation of equal Pochhammer symbols."""
    left, right = left.simplify(), right.simplify()
    return (
        left.qbinom_exp == right.qbinom_exp
        and left.sign_exp % 2 == right.sign_exp % 2
        and left.power_base == right.power_base
        and _factor_counts(left) == _factor_counts(right)
    )


def interchange_mismatches() -> List[str]:
    """Transcribed interchange identities that differ from their derivation from the base identity."""
    specs = {spec.id: spec for spec in _build_catalog()}
    mismatches = []
    for record in derived_records():
        derived = derive_interchange(specs[record["base"]], record)
        spec = specs[record["id"]]
        variables = spec.frame.variables
        if (
            series_key(spec.lhs.series, variables) != series_key(derived.lhs.series, variables)
            or series_key(spec.rhs.series, variables) != series_key(derived.rhs.series, variables)
            or not same_prefactor(spec.rhs.prefactor, derived.rhs.prefactor)
        ):
            logger.warning(f"Transcribed {spec.id} differs from its derivation: {spec.rhs} vs {derived.rhs}")
            mismatches.append(spec.id)
    return mismatches
