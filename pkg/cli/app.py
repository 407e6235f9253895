"""Interface en ligne de commande.

Codes de sortie : 0 succès, 1 vérification en échec, 2 erreur d'entrée.
Les rapports vont sur stdout, les logs sur stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from cli.table_format import ParsedTable, format_table, read_table
from services import cayley_service as cayley
from services import families_service as families
from services import report_service as reports
from services.acts_service import principal_congruence, s_as_act, uniformity_witness
from services.census_service import census_filter
from services.classify_service import classify_regular_uniform
from services.errors import RangeError, SemigroupError
from services.families_service import FamilyKind, FamilySpec
from services.verify_service import CHECKS, run_check
from utils.config import load_bounds
from utils.logging_setup import LoggingConfig, setup_logging

log = logging.getLogger("semiuniform.cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------

def _emit(text: str, out: Path | None = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    log.info("Wrote %s", out)


def _element(parsed: ParsedTable, token: str) -> int:
    if parsed.names and token in parsed.names:
        return parsed.names.index(token)
    try:
        value = int(token)
    except ValueError:
        raise RangeError(f"unknown element {token!r}") from None
    if not 0 <= value < parsed.semigroup.order:
        raise RangeError(f"element {value} is outside [0, {parsed.semigroup.order - 1}]")
    return value


def _progress(args: argparse.Namespace) -> bool:
    return not args.no_progress and sys.stderr.isatty()


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise RangeError(f"{what} must be an integer, got {token!r}") from None


def parse_sandwich(text: str) -> tuple[tuple[int | None, ...], ...]:
    """`"a,b;c,d"` : lignes = Λ, colonnes = I, `z` = entrée nulle."""
    rows = []
    for row in text.split(";"):
        entries: list[int | None] = []
        for token in row.split(","):
            token = token.strip()
            entries.append(None if token.lower() == "z" else _int(token, "sandwich entry"))
        rows.append(tuple(entries))
    return tuple(rows)


def _parse_sigma(value: str, group_order: int) -> tuple[bool, ...] | str:
    if value in ("swap", "trivial"):
        return value
    flags = tuple(_int(v, "sigma entry") != 0 for v in value.split(","))
    if len(flags) != group_order:
        raise RangeError(f"sigma needs {group_order} entries, got {len(flags)}")
    return flags


# -----------------------------------------------------------------------------
# Commands
# -----------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace) -> int:
    parsed = read_table(args.file)
    report = reports.analyze(parsed.semigroup, source=parsed.source, names=parsed.names)
    _emit(reports.dumps(report.to_dict()) if args.json else reports.render_analysis(report))
    return EXIT_OK


def cmd_uniform(args: argparse.Namespace) -> int:
    parsed = read_table(args.file)
    failure = uniformity_witness(parsed.semigroup)
    witness = None if failure is None else reports.Witness.from_failure(failure)
    if args.json:
        _emit(reports.dumps({
            "schema": reports.SCHEMA_VERSION,
            "kind": "uniform",
            "source": parsed.source,
            "uniform": witness is None,
            "witness": None if witness is None else witness.to_dict(),
        }))
        return EXIT_OK
    lines = [f"uniform: {'true' if witness is None else 'false'}"]
    if witness is not None:
        blocks = " ".join("{" + ", ".join(parsed.name(x) for x in b) + "}" for b in witness.blocks)
        lines.append(
            "witness: subact {" + ", ".join(parsed.name(x) for x in witness.subact) + "} is not large; "
            f"rho({parsed.name(witness.pair[0])}, {parsed.name(witness.pair[1])}) has blocks {blocks}"
        )
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    parsed = read_table(args.file)
    cls = classify_regular_uniform(parsed.semigroup)
    tag = str(cls.tag) if cls.applicable else None
    if args.json:
        _emit(reports.dumps({
            "schema": reports.SCHEMA_VERSION,
            "kind": "classification",
            "source": parsed.source,
            "classification": tag,
            "group_elements": list(cls.group_elements),
            "notes": list(cls.notes),
        }))
        return EXIT_OK
    text = f"classification: {tag or 'none (not regular uniform)'}\n"
    if cls.group_elements:
        text += "group part: {" + ", ".join(parsed.name(x) for x in cls.group_elements) + "}\n"
    text += "".join(f"note: {n}\n" for n in cls.notes)
    _emit(text)
    return EXIT_OK


def cmd_congruence(args: argparse.Namespace) -> int:
    parsed = read_table(args.file)
    a, b = (_element(parsed, t) for t in args.pair)
    rho = principal_congruence(s_as_act(parsed.semigroup), a, b)
    if args.json:
        _emit(reports.dumps({
            "schema": reports.SCHEMA_VERSION,
            "kind": "congruence",
            "pair": [a, b],
            "blocks": [list(block) for block in rho.blocks()],
        }))
        return EXIT_OK
    blocks = " ".join("{" + ", ".join(parsed.name(x) for x in block) + "}" for block in rho.blocks())
    _emit(f"blocks: {blocks}\n")
    return EXIT_OK


def _construct_spec(family: str, params: list[str], args: argparse.Namespace) -> tuple[FamilySpec, tuple[str, ...] | None]:
    def need(count: int) -> None:
        if len(params) != count:
            raise RangeError(f"{family} expects {count} parameter(s), got {len(params)}")

    sized = {
        "left-zero": FamilyKind.LEFT_ZERO,
        "right-zero": FamilyKind.RIGHT_ZERO,
        "cyclic-group": FamilyKind.CYCLIC_GROUP,
        "monogenic-nil": FamilyKind.NULL_MONOGENIC_NIL,
    }
    if family in sized:
        need(1)
        return FamilySpec(kind=sized[family], size=_int(params[0], "size")), None
    if family == "group":
        need(1)
        return FamilySpec(kind=FamilyKind.GROUP, group=families.group_by_name(params[0])), None
    if family == "right-group":
        need(2)
        return FamilySpec(kind=FamilyKind.RIGHT_GROUP_PRODUCT, group=families.group_by_name(params[0]),
                          size=_int(params[1], "R")), None
    if family in ("rees-matrix", "rees-matrix0"):
        need(4)
        kind = FamilyKind.REES_MATRIX_0 if family == "rees-matrix0" else FamilyKind.REES_MATRIX
        return FamilySpec(
            kind=kind,
            group=families.group_by_name(params[0]),
            index_i=_int(params[1], "|I|"),
            index_lambda=_int(params[2], "|Λ|"),
            sandwich=parse_sandwich(params[3]),
        ), None
    if family == "group-two-left-zeros":
        need(1)
        group = families.group_by_name(params[0])
        names = tuple(f"g{i}" for i in group.elements) + ("t1", "t2")
        if args.sigma is None:
            return FamilySpec(kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=group, strict_paper=True), names
        sigma = _parse_sigma(args.sigma, group.order)
        if sigma == "swap":
            sigma = families.paper_sigma(group)
        elif sigma == "trivial":
            sigma = (False,) * group.order
        return FamilySpec(kind=FamilyKind.GROUP_TWO_LEFT_ZEROS, group=group, sigma=sigma,
                          strict_paper=args.strict_paper), names
    if family in ("adjoin-identity", "adjoin-zero"):
        need(1)
        parsed = read_table(params[0])
        kind = FamilyKind.IDENTITY_ADJOINED if family == "adjoin-identity" else FamilyKind.ZERO_ADJOINED
        return FamilySpec(kind=kind, base=parsed.semigroup), None
    if family == "direct-product":
        need(2)
        return FamilySpec(kind=FamilyKind.DIRECT_PRODUCT, base=read_table(params[0]).semigroup,
                          other=read_table(params[1]).semigroup), None
    raise RangeError(f"unknown family {family!r}")


def cmd_construct(args: argparse.Namespace) -> int:
    spec, names = _construct_spec(args.family, list(args.params), args)
    s = families.construct(spec)
    if names is not None and len(names) != s.order:
        names = None
    _emit(format_table(s, names=names, comment=spec.describe()), args.out)
    return EXIT_OK


def cmd_opposite(args: argparse.Namespace) -> int:
    parsed = read_table(args.file)
    _emit(format_table(cayley.opposite(parsed.semigroup), names=parsed.names, comment=f"opposite of {parsed.source}"),
          args.out)
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    filters = [f for spec in args.filter for f in spec.split(",") if f]
    records = census_filter(
        args.order,
        filters,
        cache_dir=args.cache,
        allow_extended=args.i_have_time,
    )
    if args.db:
        from db import get_session
        from services.catalogue_service import store_census

        with get_session(args.db) as session:
            added = store_census(session, records)
        log.info("Catalogue: %s new census entries", added)
    if args.json:
        _emit(reports.dumps(reports.census_payload(args.order, filters, records)))
    else:
        _emit(reports.render_census(args.order, filters, records))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    bounds = load_bounds()
    max_order = args.max_order or bounds.verify_default_order
    if max_order > bounds.verify_extended_order and not args.i_have_time:
        raise RangeError(f"--max-order {max_order} needs --i-have-time")
    ids = list(CHECKS) if args.check.lower() == "all" else [c.strip() for c in args.check.split(",")]
    results = [
        run_check(check_id, max_order, negate=args.negate, allow_extended=args.i_have_time,
                  progress=_progress(args), bounds=bounds)
        for check_id in ids
    ]
    if args.db:
        from db import get_session
        from services.catalogue_service import record_verification

        with get_session(args.db) as session:
            for rep in results:
                record_verification(session, rep)
    if args.json:
        _emit(reports.dumps(reports.verification_payload(results)))
    else:
        _emit(reports.render_verification(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def cmd_history(args: argparse.Namespace) -> int:
    from db import get_session
    from services.catalogue_service import list_runs

    with get_session(args.db) as session:
        runs = list_runs(session, check_id=args.check, limit=args.limit)
        rows = [
            {
                "id": run.id,
                "created_at": run.created_at.isoformat(timespec="seconds"),
                "check_id": run.check_id,
                "max_order": run.max_order,
                "negated": run.negated,
                "passed": run.passed,
                "instances_scanned": run.instances_scanned,
                "counterexamples": run.counterexamples,
                "discrepancies": run.discrepancies,
                "elapsed": round(run.elapsed, 3),
            }
            for run in runs
        ]
    if args.json:
        _emit(reports.dumps({"schema": reports.SCHEMA_VERSION, "kind": "history", "runs": rows}))
        return EXIT_OK
    lines = [
        f"{r['id']:>4}  {r['created_at']}  {r['check_id']:<4} n≤{r['max_order']}  "
        f"{'PASS' if r['passed'] else 'FAIL'}  {r['instances_scanned']} instances  "
        f"{r['counterexamples']} counterexamples  {r['discrepancies']} discrepancies"
        for r in rows
    ]
    _emit("\n".join(lines) + "\n" if lines else "no verification runs recorded\n")
    return EXIT_OK


# -----------------------------------------------------------------------------
# Parser
# -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiuniform",
        description="Finite semigroups: right uniformity, classification and census verification.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    parser.add_argument("--log-file", type=Path, default=None, help="also log to this (rotating) file")
    parser.add_argument("--no-progress", action="store_true", help="disable progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", action="store_true", help="structured output (schema v1)")
        return p

    p = with_json(sub.add_parser("analyze", help="full report for a Cayley table file"))
    p.add_argument("file", type=Path)
    p.set_defaults(func=cmd_analyze)

    p = with_json(sub.add_parser("uniform", help="decide right uniformity"))
    p.add_argument("file", type=Path)
    p.set_defaults(func=cmd_uniform)

    p = with_json(sub.add_parser("classify", help="structure of a regular uniform semigroup"))
    p.add_argument("file", type=Path)
    p.set_defaults(func=cmd_classify)

    p = with_json(sub.add_parser("congruence", help="principal right congruence rho(a, b)"))
    p.add_argument("file", type=Path)
    p.add_argument("--pair", nargs=2, required=True, metavar=("A", "B"))
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("construct", help="build a named family and print its table")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--sigma", default=None, help="group-two-left-zeros action: swap, trivial or 0/1 list")
    p.add_argument("--strict-paper", action="store_true",
                   help="group-two-left-zeros: require g·θ₁ = θ₂ for every g ≠ 1")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_construct)

    p = with_json(sub.add_parser("census", help="semigroups of a given order up to isomorphism"))
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--filter", action="append", default=[], help="flag name, !flag to negate; repeatable")
    p.add_argument("--cache", type=Path, default=None, help="census cache directory")
    p.add_argument("--db", default=None, help="store records in this SQLAlchemy catalogue URL")
    p.add_argument("--i-have-time", action="store_true", help="allow order 6")
    p.set_defaults(func=cmd_census)

    p = with_json(sub.add_parser("verify", help="run verification checks over the census"))
    p.add_argument("--check", default="all", help=f"all or one of {', '.join(CHECKS)}")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--negate", action="store_true", help="invert each conclusion (harness self-test)")
    p.add_argument("--db", default=None, help="record runs in this SQLAlchemy catalogue URL")
    p.add_argument("--i-have-time", action="store_true", help="allow max order 6")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("opposite", help="print the opposite table (ab becomes ba)")
    p.add_argument("file", type=Path)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_opposite)

    p = with_json(sub.add_parser("history", help="list recorded verification runs"))
    p.add_argument("--check", default=None)
    p.add_argument("--limit", type=int, default=50)
    p.add_argument("--db", default=None, help="catalogue URL (default SEMIUNIFORM_DB_URL)")
    p.set_defaults(func=cmd_history)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    level = {0: "WARNING", 1: "INFO"}.get(args.verbose, "DEBUG")
    with setup_logging(config=LoggingConfig(level=level, log_file=args.log_file)):
        try:
            return args.func(args)
        except SemigroupError as exc:
            log.debug("Input error", exc_info=True)
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
