# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
"""
Text notation for monomials, prefactors and series.

A monomial is written ``[-]factors[/factors]`` with whitespace separated
factors ``name`` or ``name^exp``; ``q`` may carry a linear exponent in ``n``:
``q^(n+2) b^2/c d e f``, ``q^-n``, ``q^(1-n)/e``. A Pochhammer entry takes an
optional length suffix: ``b@2n``, ``b@1`` (default ``n``).
"""

import re
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, Union

from qaw_verify.errors import CatalogParseError
from qaw_verify.field import ONE, ParamMonomial
from qaw_verify.series import N, Expression, PhiSpec, PochFactor, PochLength, Prefactor, SeriesSpec, WSpec

_FACTOR = re.compile(r"(?P<name>[A-Za-z][A-Za-z0-9]*)(?:\^(?P<exp>\([^()]*\)|[+-]?[0-9/]*n?))?")
_TERM = re.compile(r"([+-])?(\d+(?:/\d+)?)?(n)?")
_LENGTH = re.compile(r"(?:(\d+)?n)?([+-]?\d+)?")


def parse_linear(text: str) -> Tuple[Fraction, Fraction]:
    """Parses ``a + b n`` into ``(a, b)``."""
    body = text.replace(" ", "")
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body:
        raise CatalogParseError(f"Empty exponent in {text!r}")
    const, coeff = Fraction(0), Fraction(0)
    pos = 0
    while pos < len(body):
        match = _TERM.match(body, pos)
        sign, digits, has_n = match.groups()
        if (digits is None and has_n is None) or (pos > 0 and sign is None):
            raise CatalogParseError(f"Malformed exponent {text!r}")
        value = (-1 if sign == "-" else 1) * (Fraction(digits) if digits else Fraction(1))
        if has_n:
            coeff += value
        else:
            const += value
        pos = match.end()
    return const, coeff


def _parse_factors(text: str, source: str) -> ParamMonomial:
    result = ONE
    for token in text.split():
        if token == "1":
            continue
        match = _FACTOR.fullmatch(token)
        if match is None:
            raise CatalogParseError(f"Malformed factor {token!r} in {source!r}")
        name, exp = match.group("name"), match.group("exp")
        const, coeff = parse_linear(exp) if exp is not None else (Fraction(1), Fraction(0))
        if name == "q":
            result = result * ParamMonomial(q_exp=const, n_coeff=coeff)
        elif coeff:
            raise CatalogParseError(f"Only q may carry an n-dependent exponent, got {token!r} in {source!r}")
        else:
            result = result * ParamMonomial(var_exps=((name, const),))
    return result


def parse_monomial(text: Union[str, Mapping[str, Any]], variables: Optional[Sequence[str]] = None) -> ParamMonomial:
    if isinstance(text, Mapping):
        return _monomial_from_table(text, variables)
    if not isinstance(text, str):
        raise CatalogParseError(f"Expected a monomial string, got {text!r}")
    body = text.strip()
    sign = 1
    if body.startswith("-"):
        sign, body = -1, body[1:]
    numer, _, denom = _split_fraction(body)
    if not numer.strip():
        raise CatalogParseError(f"Empty numerator in {text!r}")
    result = _parse_factors(numer, text) / _parse_factors(denom, text)
    if sign < 0:
        result = -result
    if variables is not None:
        unknown = set(result.variables) - set(variables)
        if unknown:
            raise CatalogParseError(f"Unknown variables {sorted(unknown)} in {text!r}")
    return result


def _split_fraction(body: str) -> Tuple[str, str, str]:
    """Splits on the first '/' outside parentheses."""
    depth = 0
    for i, char in enumerate(body):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "/" and depth == 0:
            if "/" in re.sub(r"\([^)]*\)", "", body[i + 1 :]):
                raise CatalogParseError(f"More than one '/' in {body!r}")
            return body[:i], "/", body[i + 1 :]
    return body, "", ""


def _monomial_from_table(table: Mapping[str, Any], variables: Optional[Sequence[str]]) -> ParamMonomial:
    try:
        m = ParamMonomial(
            int(table.get("sign", 1)),
            Fraction(str(table.get("q", 0))),
            Fraction(str(table.get("n", 0))),
            tuple((k, Fraction(str(v))) for k, v in table.get("vars", {}).items()),
        )
    except (TypeError, ValueError, AttributeError) as e:
        raise CatalogParseError(f"Malformed exponent table {table!r}") from e
    if variables is not None and set(m.variables) - set(variables):
        raise CatalogParseError(f"Unknown variables in exponent table {table!r}")
    return m


def monomial_table(m: ParamMonomial) -> Dict[str, Any]:
    def plain(x):
        return x if isinstance(x, int) else str(x)

    return {"sign": m.sign, "q": plain(m.q_exp), "n": plain(m.n_coeff), "vars": {k: plain(v) for k, v in m.var_exps}}


def parse_length(text: str) -> PochLength:
    match = _LENGTH.fullmatch(text.replace(" ", ""))
    if match is None or not text.strip():
        raise CatalogParseError(f"Malformed Pochhammer length {text!r}")
    per_n, fixed = match.groups()
    has_n = "n" in text
    return PochLength(int(fixed) if fixed else 0, (int(per_n) if per_n else 1) if has_n else 0)


def _parse_poch(entry: Union[str, Mapping[str, Any]], exponent: int, variables) -> PochFactor:
    if isinstance(entry, Mapping):
        try:
            return PochFactor(
                parse_monomial(entry["base"], variables), parse_length(str(entry.get("length", "n"))), exponent
            )
        except KeyError as e:
            raise CatalogParseError(f"Pochhammer entry {entry!r} has no base") from e
    base, _, length = str(entry).partition("@")
    return PochFactor(parse_monomial(base, variables), parse_length(length) if length else N, exponent)


def parse_prefactor(record: Optional[Mapping[str, Any]], variables: Optional[Sequence[str]] = None) -> Prefactor:
    if not record:
        return Prefactor()
    if not isinstance(record, Mapping):
        raise CatalogParseError(f"Expected a prefactor record, got {record!r}")
    factors = tuple(_parse_poch(e, 1, variables) for e in record.get("num", ())) + tuple(
        _parse_poch(e, -1, variables) for e in record.get("den", ())
    )
    try:
        qbinom, sign = int(record.get("qbinom", 0)), int(record.get("sign", 0))
    except (TypeError, ValueError) as e:
        raise CatalogParseError(f"Malformed prefactor {record!r}") from e
    return Prefactor(qbinom, sign, parse_monomial(record.get("power", "1"), variables), factors)


def parse_series(record: Mapping[str, Any], variables: Optional[Sequence[str]] = None) -> SeriesSpec:
    try:
        if "phi" in record:
            body = record["phi"]
            return PhiSpec(
                tuple(parse_monomial(m, variables) for m in body["upper"]),
                tuple(parse_monomial(m, variables) for m in body["lower"]),
                parse_monomial(body.get("arg", "q"), variables),
                int(body.get("pad", 0)),
            )
        if "w" in record:
            body = record["w"]
            return WSpec(
                parse_monomial(body["b"], variables),
                tuple(parse_monomial(m, variables) for m in body["numer"]),
                parse_monomial(body["arg"], variables),
            )
    except (KeyError, TypeError) as e:
        raise CatalogParseError(f"Malformed series record {record!r}") from e
    raise CatalogParseError(f"Series record needs a 'phi' or 'w' entry: {record!r}")


def parse_expression(record: Mapping[str, Any], variables: Optional[Sequence[str]] = None) -> Expression:
    if not isinstance(record, Mapping):
        raise CatalogParseError(f"Expected an expression record, got {record!r}")
    return Expression(parse_series(record, variables), parse_prefactor(record.get("pre"), variables))


def expression_record(expr: Expression) -> Dict[str, Any]:
    """Exponent-table form of an expression, readable by parse_expression."""
    pre = expr.prefactor

    def entries(positive: bool):
        return [
            {"base": monomial_table(f.base), "length": str(f.length)}
            for f in pre.poch_factors
            if (f.exponent > 0) == positive
            for _ in range(abs(f.exponent))
        ]

    record = {
        "pre": {
            "qbinom": pre.qbinom_exp,
            "sign": pre.sign_exp,
            "power": monomial_table(pre.power_base),
            "num": entries(True),
            "den": entries(False),
        }
    }
    series = expr.series
    if isinstance(series, WSpec):
        record["w"] = {
            "b": monomial_table(series.special),
            "numer": [monomial_table(m) for m in series.numer],
            "arg": monomial_table(series.argument),
        }
    else:
        record["phi"] = {
            "upper": [monomial_table(m) for m in series.upper],
            "lower": [monomial_table(m) for m in series.lower],
            "arg": monomial_table(series.argument),
            "pad": series.zero_pad,
        }
    return record


__all__ = [
    "expression_record",
    "monomial_table",
    "parse_expression",
    "parse_length",
    "parse_linear",
    "parse_monomial",
    "parse_prefactor",
    "parse_series",
]
