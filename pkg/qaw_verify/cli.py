# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import argparse
import csv
import io
import json
import logging
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Hashable, List, Mapping, Optional, Sequence

from qaw_verify.askey_wilson import AWPoint, RepId, aw_expression, aw_reference, aw_sweep, get_rep
from qaw_verify.catalog import load_catalog, verify_all
from qaw_verify.errors import CatalogParseError, EvaluationError
from qaw_verify.symmetry import (
    CONVERSE_CLASSES,
    PHI_TO_W,
    REFERENCE_CONVERSE,
    REFERENCE_S6,
    REFERENCE_WD5,
    TABULATED_WD5,
    W_CLASSES,
    W_TO_PHI,
    ClassId,
    blocks,
    compare_rows,
    converse_census,
    converse_classifier,
    emit_graph,
    s6_census,
    s6_elements,
    s6_value_check,
    template_digest,
    watson_permutation_census,
    wd5_rows,
    wd5_value_check,
)

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "dot")
SEED_VARIABLE = "QAW_SEED"
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 1
    n_max: int = 6
    envs_per_check: int = 25
    output_dir: Path = Path(".")
    format: str = "json"

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if self.n_max < 0:
            raise ValueError(f"n_max must be non-negative, got {self.n_max}")
        if self.envs_per_check < 1:
            raise ValueError(f"envs_per_check must be positive, got {self.envs_per_check}")
        if self.format not in FORMATS:
            raise ValueError(f"Unknown format {self.format}")
        object.__setattr__(self, "output_dir", Path(self.output_dir))

    @classmethod
    def from_args(cls, args: argparse.Namespace, environ: Mapping[str, str] = os.environ) -> "RunConfig":
        seed = args.seed
        if environ.get(SEED_VARIABLE):
            try:
                seed = int(environ[SEED_VARIABLE])
            except ValueError as e:
                raise ValueError(f"{SEED_VARIABLE} must be an integer, got {environ[SEED_VARIABLE]!r}") from e
        return cls(seed, args.n_max, args.envs, Path(args.out), getattr(args, "format", "json"))

    def run_record(self) -> Dict[str, Any]:
        return {"seed": self.seed, "nmax": self.n_max, "envs": self.envs_per_check, "templates": template_digest()}


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.match(text.strip()):
        raise ValueError(f"Expected a rational 'p' or 'p/q', got {text!r}")
    return Fraction(text.strip())


def _atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="\n") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(str(tmp), str(path))


def _dump_json(record: Any) -> str:
    return json.dumps(record, indent=1, sort_keys=False) + "\n"


def cmd_verify(config: RunConfig, catalog_path: Optional[str] = None) -> int:
    try:
        specs = load_catalog(catalog_path) if catalog_path else None
    except CatalogParseError as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    summary = verify_all(config.seed, config.n_max, config.envs_per_check, specs)
    sweep = aw_sweep(config.seed, config.n_max, config.envs_per_check)
    report = summary.to_dict()
    report["run"] = config.run_record()
    report["representations"] = [
        {
            "rep": result.rep.value,
            "order": list(result.order),
            "pass": result.passed,
            "envs": result.envs,
            "skips": len(result.skips),
            "micros": result.micros,
        }
        for result in sweep
    ]
    report["failures"] += [f"{r.rep.value}{list(r.order)}" for r in sweep if not r.passed]
    _atomic_write_text(config.output_dir / "verify.json", _dump_json(report))
    passed = summary.passed and all(r.passed for r in sweep)
    logger.info(f"Verification {'passed' if passed else 'failed'}: {report['identities']}")
    return EXIT_OK if passed else EXIT_FAILED


@dataclass
class CensusReport:
    name: str
    rows: Dict[Hashable, Dict[Hashable, int]]
    deltas: List[str] = field(default_factory=list)
    strict: bool = True
    tabulated: Optional[Dict[Hashable, Dict[Hashable, int]]] = None
    known_deviations: List[str] = field(default_factory=list)
    value_failures: Optional[List[str]] = None

    def csv_rows(self) -> List[List[Any]]:
        return [
            [source.value, target.value, count]
            for source, row in self.rows.items()
            for target, count in row.items()
        ]

    def to_dict(self, config: RunConfig) -> Dict[str, Any]:
        record = {
            "run": config.run_record(),
            "census": self.name,
            "rows": [dict(zip(("source_class", "target_class", "count"), row)) for row in self.csv_rows()],
            "blocks": [[label.value for label in block] for block in blocks(self.rows)],
            "deltas": self.deltas,
        }
        if self.tabulated is not None:
            record["tabulated"] = [
                {"source_class": source.value, "target_class": target.value, "count": count}
                for source, row in self.tabulated.items()
                for target, count in row.items()
            ]
        if self.known_deviations:
            record["known_deviations"] = self.known_deviations
        if self.value_failures is not None:
            record["value_failures"] = self.value_failures
        return record


def census_s6() -> CensusReport:
    rows = {ClassId.C3: s6_census()}
    return CensusReport("s6", rows, compare_rows(rows, {ClassId.C3: REFERENCE_S6}))


def census_wd5() -> CensusReport:
    rows = wd5_rows()
    return CensusReport(
        "wd5",
        rows,
        compare_rows(rows, REFERENCE_WD5),
        tabulated=TABULATED_WD5,
        known_deviations=compare_rows(rows, TABULATED_WD5, level=logging.INFO),
    )


def census_converse() -> CensusReport:
    rows = converse_census()
    return CensusReport("converse", rows, compare_rows(rows, REFERENCE_CONVERSE))


def census_watson() -> CensusReport:
    rows, tabulated, deltas = {}, {}, []
    for direction in (PHI_TO_W, W_TO_PHI):
        census = watson_permutation_census(direction)
        rows.update(census.rows)
        tabulated.update(census.reference)
        deltas += [f"{direction} {delta}" for delta in census.deltas]
    return CensusReport("watson", rows, deltas, strict=False, tabulated=tabulated)


__censuses__: Dict[str, Callable[[], CensusReport]] = {
    "s6": census_s6,
    "wd5": census_wd5,
    "converse": census_converse,
    "watson": census_watson,
}


def get_census(name: str) -> Callable[[], CensusReport]:
    try:
        return __censuses__[name]
    except KeyError as e:
        raise ValueError(f"Unknown census {name}") from e


def values_s6(config: RunConfig) -> List[str]:
    failures = s6_value_check(list(s6_elements()), seed=config.seed, envs=config.envs_per_check, n_max=config.n_max)
    return [f"s6 {list(g)}: {len(envs)} envs" for g, envs in failures.items()]


def values_wd5(config: RunConfig) -> List[str]:
    return [
        f"{label.value} {g}: {len(envs)} envs"
        for label in W_CLASSES
        for g, envs in wd5_value_check(
            label, seed=config.seed, envs=config.envs_per_check, n_max=config.n_max
        ).items()
    ]


def values_converse(config: RunConfig) -> List[str]:
    return [
        f"{label.value} {g}: {len(envs)} envs"
        for label in CONVERSE_CLASSES
        for g, envs in wd5_value_check(
            label, converse_classifier(), seed=config.seed, envs=config.envs_per_check, n_max=config.n_max
        ).items()
    ]


__value_checks__: Dict[str, Callable[[RunConfig], List[str]]] = {
    "s6": values_s6,
    "wd5": values_wd5,
    "converse": values_converse,
}


def cmd_census(config: RunConfig, which: str, values: bool = False) -> int:
    if config.format == "dot":
        logger.error("Censuses are written as json or csv")
        return EXIT_USAGE
    if values and which not in __value_checks__:
        logger.error(f"No value check for census {which}")
        return EXIT_USAGE
    report = get_census(which)()
    if values:
        report.value_failures = __value_checks__[which](config)
        logger.info(f"Value check of {which}: {len(report.value_failures)} failing images")
    if config.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["source_class", "target_class", "count"])
        writer.writerows(report.csv_rows())
        text = buffer.getvalue()
    else:
        text = _dump_json(report.to_dict(config))
    _atomic_write_text(config.output_dir / f"census_{which}.{config.format}", text)
    for delta in report.deltas:
        print(delta, file=sys.stderr)
    for deviation in report.known_deviations:
        print(f"known deviation {deviation}", file=sys.stderr)
    for failure in report.value_failures or []:
        print(f"value mismatch {failure}", file=sys.stderr)
    if report.value_failures or (report.strict and report.deltas):
        return EXIT_FAILED
    return EXIT_OK


def cmd_graph(config: RunConfig, which: str) -> int:
    _atomic_write_text(config.output_dir / f"{which}.dot", emit_graph(which))
    return EXIT_OK


def cmd_eval(
    n: int,
    a: Sequence[Fraction],
    t: Fraction,
    q: Fraction,
    rep: RepId = RepId.D1,
    order: Sequence[int] = (1, 2, 3, 4),
    check: bool = False,
) -> int:
    try:
        point = AWPoint(n, tuple(a), t, q)
        value = aw_expression(rep, order).evaluate(point.env())
        print(value)
        if check:
            print(value - aw_reference(point))
    except EvaluationError as e:
        print(f"{rep.value} cannot be evaluated: {e}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as e:
        print(f"{e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=1, help=f"Sampling seed, overridden by {SEED_VARIABLE}")
    common.add_argument("--n-max", type=int, default=6, help="Largest n sampled")
    common.add_argument("--envs", type=int, default=25, help="Points per check")
    common.add_argument("--out", default=".", help="Output directory")
    common.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    formatted = argparse.ArgumentParser(add_help=False, parents=[common])
    formatted.add_argument("--format", default="json", choices=FORMATS)

    parser = argparse.ArgumentParser(prog="qaw", description="Exact verification of terminating q-series identities")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[formatted], help="Verify the identity catalog and representations")
    verify.add_argument("--catalog", help="External catalog JSON to verify instead of the built-in one")

    census = commands.add_parser("census", parents=[formatted], help="Run a symmetry census")
    census.add_argument("which", choices=sorted(__censuses__))
    census.add_argument("--values", action="store_true", help="Also value-check every terminating image")

    graph = commands.add_parser("graph", parents=[common], help="Emit a DOT figure")
    graph.add_argument("which", choices=["fig1", "fig2", "fig3"])

    evaluate = commands.add_parser("eval", parents=[formatted], help="Evaluate one representation at a point")
    evaluate.add_argument("--n", type=int, required=True)
    evaluate.add_argument("--a", nargs=4, required=True, metavar=("A1", "A2", "A3", "A4"))
    evaluate.add_argument("--t", required=True)
    evaluate.add_argument("--q", required=True)
    evaluate.add_argument("--rep", default="D1", help="D1..D7 or aw:def1..aw:def7")
    evaluate.add_argument("--order", default="1,2,3,4", help="Indices (p, r, t, u)")
    evaluate.add_argument("--check", action="store_true", help="Also print the residual against the defining series")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format="%(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig.from_args(args)
        if args.command == "eval":
            return cmd_eval(
                args.n,
                [parse_rational(x) for x in args.a],
                parse_rational(args.t),
                parse_rational(args.q),
                get_rep(args.rep),
                tuple(int(k) for k in args.order.split(",")),
                args.check,
            )
    except ValueError as e:
        print(f"{e}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "verify":
        return cmd_verify(config, args.catalog)
    if args.command == "census":
        return cmd_census(config, args.which, args.values)
    return cmd_graph(config, args.which)


if __name__ == "__main__":
    sys.exit(main())
