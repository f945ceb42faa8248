# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import copy
import dataclasses
import json
from fractions import Fraction

import pytest

from qaw_verify.catalog import (
    catalog,
    export_catalog,
    get_identity,
    load_catalog,
    mutations,
    parse_expression,
    parse_monomial,
    sample_envs,
    verify_all,
    verify_identity,
)
from qaw_verify.catalog.identities import (
    INTERCHANGE_RECORDS,
    build_identity,
    derive_interchange,
    derived_records,
    interchange_mismatches,
    same_prefactor,
)
from qaw_verify.catalog.notation import parse_length
from qaw_verify.errors import CatalogParseError, EvaluationError
from qaw_verify.field import BCDEF, monomial
from qaw_verify.series import PhiSpec, PochLength, WSpec, balance_level, invert, is_very_well_poised, series_key

ALL_IDS = [spec.id for spec in catalog(include_equivalents=True)]


def test_catalog_size():
    assert len(catalog()) == 36
    assert len(ALL_IDS) == 38
    assert len(set(ALL_IDS)) == len(ALL_IDS)
    assert len(derived_records()) == 22
    assert sum(spec.equivalent for spec in catalog(include_equivalents=True)) == 2


def test_get_identity():
    assert get_identity("Wat/4to5=3").frame is BCDEF
    with pytest.raises(ValueError):
        get_identity("nope")


@pytest.mark.parametrize("identity_id", ALL_IDS)
def test_identity_holds(identity_id):
    spec = get_identity(identity_id)
    report = verify_identity(spec, sample_envs(spec, seed=1, n_max=4, count=6))
    assert report.passed, report.to_dict()
    assert len(report.skips) < len(report.fingerprints)


@pytest.mark.parametrize("identity_id", ALL_IDS)
def test_mutations_are_detected(identity_id):
    spec = get_identity(identity_id)
    envs = sample_envs(spec, seed=3, n_max=4, count=6, n_min=1)
    for mutated in mutations(spec.rhs):
        report = verify_identity(dataclasses.replace(spec, rhs=mutated), envs)
        assert not report.passed, f"{identity_id}: mutation {mutated} went unnoticed"


def test_verify_all_summary():
    specs = [get_identity("Wat/4to5=4"), get_identity("cWat/4phi3=1eq")]
    summary = verify_all(seed=2, n_max=2, envs_per_identity=3, specs=specs)
    record = summary.to_dict()
    assert summary.passed
    assert record["run"] == {"seed": 2, "nmax": 2, "envs": 3}
    assert record["identities"] == {"passed": 1, "total": 1}
    assert record["equivalents"] == {"passed": 1, "total": 1}
    assert record["failures"] == []
    assert {"id", "pass", "envs", "skips", "micros"} <= set(record["results"][0])


def test_sample_envs_is_deterministic():
    spec = get_identity("C3.3/4to5=2")
    first = [env.fingerprint for env in sample_envs(spec, 1, 3, 4)]
    assert first == [env.fingerprint for env in sample_envs(spec, 1, 3, 4)]
    assert first != [env.fingerprint for env in sample_envs(spec, 2, 3, 4)]
    assert [env.n for env in sample_envs(spec, 1, 3, 4)] == [0, 1, 2, 3]


def test_parse_monomial():
    assert parse_monomial("q^(n+2) b^2/c d e f") == monomial(q=2, n=1, b=2, c=-1, d=-1, e=-1, f=-1)
    assert parse_monomial("q^-n") == monomial(n=-1)
    assert parse_monomial("q^(1-n)/e") == monomial(q=1, n=-1, e=-1)
    assert parse_monomial("-q^(1/2) b^(1/2)") == monomial(-1, Fraction(1, 2), 0, b=Fraction(1, 2))
    assert parse_monomial({"sign": -1, "q": "1/2", "vars": {"b": 2}}) == monomial(-1, Fraction(1, 2), b=2)
    m = monomial(q=1, n=-1, b=2, c=-1)
    assert parse_monomial(str(m)) == m


@pytest.mark.parametrize("text", ["b^n", "a/b/c", "q^()", "2b", ""])
def test_parse_monomial_errors(text):
    with pytest.raises(CatalogParseError):
        parse_monomial(text)


def test_parse_monomial_unknown_variable():
    with pytest.raises(CatalogParseError):
        parse_monomial("q x", BCDEF.variables)


def test_parse_length():
    assert parse_length("n") == PochLength(0, 1)
    assert parse_length("2n") == PochLength(0, 2)
    assert parse_length("n+1") == PochLength(1, 1)
    assert parse_length("1") == PochLength(1, 0)
    with pytest.raises(CatalogParseError):
        parse_length("m")


def test_parse_expression():
    expr = parse_expression(
        {
            "pre": {"qbinom": 1, "sign": 1, "power": "b", "num": ["b@2n"], "den": ["q b/c"]},
            "w": {"b": "b", "numer": ["q^-n", "c", "d", "e", "f"], "arg": "q^(n+2) b^2/c d e f"},
        }
    )
    assert isinstance(expr.series, WSpec)
    assert expr.prefactor.poch_factors[0].length == PochLength(0, 2)
    assert expr.prefactor.poch_factors[1].exponent == -1
    with pytest.raises(CatalogParseError):
        parse_expression({"pre": {}, "psi": {}})


def test_export_and_load(tmp_path):
    path = tmp_path / "catalog.json"
    export_catalog(path)
    loaded = load_catalog(path)
    assert [spec.id for spec in loaded] == ALL_IDS
    for spec in loaded:
        original = get_identity(spec.id)
        variables = spec.frame.variables
        assert series_key(spec.rhs.series, variables) == series_key(original.rhs.series, variables)
        env = sample_envs(original, seed=1, n_max=3, count=1, n_min=3)[0]
        assert spec.rhs.evaluate(env) == original.rhs.evaluate(env)
        assert spec.constraints == original.constraints


def test_load_rejects_bad_files(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("[{")
    with pytest.raises(CatalogParseError):
        load_catalog(broken)
    not_a_list = tmp_path / "dict.json"
    not_a_list.write_text(json.dumps({"id": "x"}))
    with pytest.raises(CatalogParseError):
        load_catalog(not_a_list)
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps([{"id": "x", "lhs": {"phi": {"upper": ["q^-n"], "lower": []}}}]))
    with pytest.raises(CatalogParseError):
        load_catalog(missing)
    with pytest.raises(CatalogParseError):
        load_catalog(tmp_path / "absent.json")


def test_interchange_needs_symmetric_left_side():
    record = {"id": "x", "lhs_relabel": {"c": "d", "d": "c"}, "rhs_relabel": {}}
    with pytest.raises(CatalogParseError):
        derive_interchange(get_identity("cWat/4phi3=1"), record)


def test_transcribed_interchanges_match_derivation():
    assert len(INTERCHANGE_RECORDS) == 22
    assert [record["id"] for record in INTERCHANGE_RECORDS] == [record["id"] for record in derived_records()]
    assert interchange_mismatches() == []


def test_misprinted_interchange_prefactor_is_caught():
    record = copy.deepcopy(next(r for r in INTERCHANGE_RECORDS if r["id"] == "A3.8/r1=r6"))
    spec = get_identity("A3.8/r1=r6")
    record["rhs"]["pre"]["den"] = ["q b/d e", "q b/e", "q b/f"]
    misprinted = build_identity(record)
    assert same_prefactor(spec.rhs.prefactor, spec.rhs.prefactor)
    assert not same_prefactor(misprinted.rhs.prefactor, spec.rhs.prefactor)
    envs = sample_envs(spec, seed=1, n_max=3, count=4, n_min=1)
    assert not verify_identity(misprinted, envs).passed


@pytest.mark.parametrize("identity_id", ALL_IDS)
def test_catalog_series_shapes(identity_id):
    spec = get_identity(identity_id)
    for series in (spec.lhs.series, spec.rhs.series):
        if isinstance(series, WSpec):
            assert is_very_well_poised(series.expand())
        else:
            assert balance_level(series.map_monomials(spec.frame.reduce)) == 1


def test_very_well_poised_rejects_near_misses():
    expanded = get_identity("C3.3/4to5=1").lhs.series.expand()
    assert not is_very_well_poised(get_identity("Wat/4to5=3").rhs.series)
    perturbed = PhiSpec(expanded.upper, expanded.lower[:-1] + (monomial(q=1) * expanded.lower[-1],), expanded.argument)
    assert not is_very_well_poised(perturbed)
    assert not is_very_well_poised(PhiSpec(expanded.upper, expanded.lower, expanded.argument, zero_pad=1))


@pytest.mark.parametrize("identity_id", ALL_IDS)
def test_catalog_series_inversion(identity_id):
    spec = get_identity(identity_id)
    variables = spec.frame.variables
    for series in (spec.lhs.series, spec.rhs.series):
        inverted = invert(series)
        assert series_key(invert(inverted.series).series, variables) == series_key(series, variables)
        checked = 0
        for env in sample_envs(spec, seed=5, n_max=4, count=6):
            try:
                value = series.evaluate(env)
                image = inverted.evaluate(env)
            except EvaluationError:
                continue
            assert image == value
            checked += 1
        assert checked
